import numpy as np
import pytest

from tsprobe import ConfigError, StlConfig, ValidationError, loess_smooth, stl_decompose

from conftest import make_series


class TestLoess:
    def test_reproduces_constants(self):
        for window in (3, 5, 13):
            out = loess_smooth([5.0] * 5, window)
            np.testing.assert_allclose(out, 5.0, rtol=1e-12)

    def test_degree1_reproduces_lines(self):
        y = 3.0 + 0.7 * np.arange(40)
        for window in (5, 11, 41, 101):
            out = loess_smooth(y, window, degree=1)
            np.testing.assert_allclose(out, y, atol=1e-9)

    def test_smooths_alternating_noise_toward_line(self):
        n = 60
        i = np.arange(n, dtype=float)
        line = 1.0 + 0.5 * i
        noise = np.where(i % 2 == 0, 1.0, -1.0)
        y = line + noise
        # independent oracle: direct least-squares line fit
        coef = np.polyfit(i, y, 1)
        fit_rms = np.sqrt(np.mean((np.polyval(coef, i) - y) ** 2))
        assert fit_rms > 0.9  # the noise is there
        out = loess_smooth(y, 5, degree=1)
        out_rms = np.sqrt(np.mean((out - line) ** 2))
        raw_rms = np.sqrt(np.mean((y - line) ** 2))
        assert out_rms < raw_rms

    def test_even_window_rejected(self):
        with pytest.raises(ConfigError, match="odd"):
            loess_smooth([1.0, 2.0, 3.0], 4)

    def test_tiny_window_rejected(self):
        with pytest.raises(ConfigError):
            loess_smooth([1.0, 2.0, 3.0], 1)

    def test_bad_degree_rejected(self):
        with pytest.raises(ConfigError, match="degree"):
            loess_smooth([1.0, 2.0, 3.0], 3, degree=2)

    def test_output_length_matches_input(self):
        rng = np.random.default_rng(0)
        y = rng.standard_normal(37)
        assert len(loess_smooth(y, 7)) == 37


class TestStl:
    def test_constant_series(self):
        d = stl_decompose(make_series(np.full(96, 10.0)))
        np.testing.assert_allclose(d.trend, 10.0, rtol=1e-6)
        np.testing.assert_allclose(d.seasonal, 0.0, atol=1e-6 * 10)
        np.testing.assert_allclose(d.remainder, 0.0, atol=1e-6 * 10)

    def test_trend_plus_sine_remainder_small(self, trend_sine_series):
        d = stl_decompose(trend_sine_series)
        rms = np.sqrt(np.mean(d.remainder ** 2))
        assert rms <= 0.05 * 5.0

    def test_additivity_exact(self, seasonal_series):
        d = stl_decompose(seasonal_series)
        assert np.array_equal(d.reassemble(), seasonal_series.values)

    def test_too_short_raises(self):
        with pytest.raises(ValidationError, match="insufficient length for period"):
            stl_decompose(make_series(np.arange(71.0), sp=24))

    def test_deterministic(self, seasonal_series):
        d1 = stl_decompose(seasonal_series)
        d2 = stl_decompose(seasonal_series)
        assert np.array_equal(d1.trend, d2.trend)
        assert np.array_equal(d1.seasonal, d2.seasonal)
        assert np.array_equal(d1.remainder, d2.remainder)

    def test_shift_equivariance(self, seasonal_series):
        c = 123.5
        shifted = seasonal_series.with_values(seasonal_series.values + c, id_suffix="-shift")
        d0 = stl_decompose(seasonal_series)
        d1 = stl_decompose(shifted)
        tol = 1e-9 * (1 + abs(c))
        np.testing.assert_allclose(d1.trend, d0.trend + c, atol=tol)
        np.testing.assert_allclose(d1.seasonal, d0.seasonal, atol=tol)
        np.testing.assert_allclose(d1.remainder, d0.remainder, atol=tol)

    def test_seasonal_cycle_means_near_zero(self, seasonal_series):
        d = stl_decompose(seasonal_series)
        std = float(np.std(seasonal_series.values))
        sp = seasonal_series.seasonal_period
        n_cycles = len(d) // sp
        cycle_means = d.seasonal[: n_cycles * sp].reshape(n_cycles, sp).mean(axis=1)
        assert np.all(np.abs(cycle_means) <= 1e-6 * std + 1e-12)

    def test_numeric_seasonal_window(self, trend_sine_series):
        # across-cycle loess keeps the trend out of the seasonal entirely
        d = stl_decompose(trend_sine_series, StlConfig(seasonal_window=7, inner_iterations=2))
        rms = np.sqrt(np.mean(d.remainder ** 2))
        assert rms <= 0.05 * 5.0
        assert np.array_equal(d.reassemble(), trend_sine_series.values)

    def test_robust_iterations_downweight_outlier(self):
        rng = np.random.default_rng(4)
        i = np.arange(240, dtype=float)
        x = 20 + 5 * np.sin(2 * np.pi * i / 24) + 0.1 * rng.standard_normal(240)
        x[120] += 80.0  # single spike
        ts = make_series(x, sid="spike")
        robust = stl_decompose(ts, StlConfig(robust_iterations=2))
        plain = stl_decompose(ts)
        # the spike should sit in the remainder, not bend the trend, when robust
        window = slice(110, 131)
        assert np.ptp(robust.trend[window]) < np.ptp(plain.trend[window])

    def test_trend_window_default(self):
        assert StlConfig().effective_trend_window(24) == 37
        assert StlConfig(seasonal_window=7).effective_trend_window(24) == 47

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            StlConfig(seasonal_window=4)
        with pytest.raises(ConfigError):
            StlConfig(inner_iterations=0)
        with pytest.raises(ConfigError):
            StlConfig(robust_iterations=-1)
