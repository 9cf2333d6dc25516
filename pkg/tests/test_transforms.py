import numpy as np
import pytest

from tsprobe import (
    Interval,
    ParameterError,
    TransformStep,
    ValidationError,
    add_noise,
    apply_pipeline,
    compute_features,
    fit_trend_line,
    parse_pipeline,
    stl_decompose,
    transform_seasonal,
    transform_trend,
    translate_level,
)
from tsprobe.features import TrendFit

from conftest import make_series


class TestInterval:
    def test_bounds(self):
        with pytest.raises(ValidationError):
            Interval(0, 5)
        with pytest.raises(ValidationError):
            Interval(5, 4)
        Interval(3, 3).validate_against(3)
        with pytest.raises(ValidationError):
            Interval(1, 4).validate_against(3)

    def test_slice_is_zero_based(self):
        assert Interval(1, 24).slice() == slice(0, 24)
        assert len(Interval(49, 96)) == 48


class TestTransformTrend:
    def make_fit(self, beta0, beta1, deviations):
        return TrendFit(beta0=beta0, beta1=beta1, deviations=np.asarray(deviations, dtype=float))

    def test_identity_parameters_reproduce_trend(self):
        rng = np.random.default_rng(0)
        trend = 3.0 + 0.2 * np.arange(50) + 0.5 * rng.standard_normal(50)
        fit = fit_trend_line(trend)
        out = transform_trend(fit, Interval(1, 50), f=1.0, h=1.0, m=0.0)
        np.testing.assert_allclose(out, trend, rtol=1e-12, atol=1e-12)

    def test_scalar_evaluation(self):
        # hand evaluation: beta0=10, beta1=0.5, dev_4=2, i=4, f=2, h=2, m=0.1
        dev = np.zeros(8)
        dev[3] = 2.0
        fit = self.make_fit(10.0, 0.5, dev)
        out = transform_trend(fit, Interval(4, 4), f=2.0, h=2.0, m=0.1)
        assert out[0] == pytest.approx(20.0, abs=1e-12)

    def test_h_zero_rejected(self):
        fit = self.make_fit(1.0, 0.0, np.zeros(4))
        with pytest.raises(ParameterError, match="h"):
            transform_trend(fit, Interval(1, 4), f=1.0, h=0.0, m=0.0)

    def test_zero_intercept_m_term_warns(self):
        # m multiplies the intercept, so it is inert when the trend is zero
        ts = make_series(np.zeros(96), sid="flat-zero")
        step = TransformStep(kind="trend", params={"m": 0.5})
        with pytest.warns(RuntimeWarning, match="intercept"):
            apply_pipeline(ts, [step])

    def test_positive_m_raises_slope_feature(self, seasonal_series):
        # beta0 > 0 fixture: adding the m term must increase recomputed F4
        base = compute_features(stl_decompose(seasonal_series))
        step = TransformStep(kind="trend", params={"f": 1.0, "h": 1.0, "m": 0.01})
        out = apply_pipeline(seasonal_series, [step])
        new = compute_features(stl_decompose(out.to_series()))
        assert fit_trend_line(stl_decompose(seasonal_series).trend).beta0 > 0
        assert new.trend_slope > base.trend_slope


class TestTransformSeasonal:
    def test_identity(self):
        s = np.sin(np.arange(30.0))
        out = transform_seasonal(s, Interval(1, 30), k=1.0)
        np.testing.assert_array_equal(out, s)

    def test_locality_bit_identical(self):
        rng = np.random.default_rng(1)
        s = rng.standard_normal(96)
        out = transform_seasonal(s, Interval(1, 24), k=2.0)
        assert np.array_equal(out[24:], s[24:])
        np.testing.assert_allclose(out[:24], 2.0 * s[:24])

    def test_removing_seasonality_lowers_f2(self, seasonal_series):
        base = compute_features(stl_decompose(seasonal_series))
        step = TransformStep(kind="seasonal", params={"k": 0.0})
        out = apply_pipeline(seasonal_series, [step])
        new = compute_features(stl_decompose(out.to_series()))
        assert new.seasonal_strength < base.seasonal_strength


class TestTranslateLevel:
    def test_identity(self):
        v = np.arange(10.0)
        np.testing.assert_array_equal(translate_level(v, Interval(1, 10), 0.0), v)

    def test_exact_jump(self):
        v = np.zeros(96)
        out = translate_level(v, Interval(49, 96), 5.0)
        assert np.all(out[:48] == 0.0)
        assert np.all(out[48:] == 5.0)


class TestAddNoise:
    def test_p_zero_identity(self):
        v = np.arange(20.0)
        out = add_noise(v, Interval(1, 20), p=0.0, sigma_rel=0.5, seed=3)
        np.testing.assert_array_equal(out, v)

    def test_sigma_zero_identity(self):
        v = np.arange(20.0)
        out = add_noise(v, Interval(1, 20), p=1.0, sigma_rel=0.0, seed=3)
        np.testing.assert_array_equal(out, v)

    def test_deterministic(self):
        v = np.arange(50.0)
        a = add_noise(v, Interval(1, 50), p=1.0, sigma_rel=0.5, seed=42)
        b = add_noise(v, Interval(1, 50), p=1.0, sigma_rel=0.5, seed=42)
        np.testing.assert_array_equal(a, b)
        c = add_noise(v, Interval(1, 50), p=1.0, sigma_rel=0.5, seed=43)
        assert not np.array_equal(a, c)

    def test_fraction_of_points(self):
        v = np.arange(100.0)
        out = add_noise(v, Interval(1, 100), p=0.3, sigma_rel=1.0, seed=0)
        assert int((out != v).sum()) == 30

    def test_locality(self):
        v = np.arange(100.0)
        out = add_noise(v, Interval(11, 20), p=1.0, sigma_rel=1.0, seed=0)
        assert np.array_equal(out[:10], v[:10])
        assert np.array_equal(out[20:], v[20:])
        assert int((out != v).sum()) == 10


class TestStepValidation:
    def test_unknown_kind(self):
        with pytest.raises(ParameterError, match="kind"):
            TransformStep(kind="warp", params={})

    def test_noise_p_out_of_range(self):
        with pytest.raises(ParameterError):
            TransformStep(kind="noise", params={"p": 1.5, "sigma_rel": 1.0})

    def test_defaults_fill_identity(self):
        step = TransformStep(kind="trend", params={"f": 2.0})
        assert step.params == {"f": 2.0, "h": 1.0, "m": 0.0}
        assert not step.is_identity()
        assert TransformStep(kind="trend", params={}).is_identity()


class TestApplyPipeline:
    def test_empty_pipeline_bit_identical(self, seasonal_series):
        out = apply_pipeline(seasonal_series, [])
        assert np.array_equal(out.transformed_values, seasonal_series.values)

    def test_identity_pipeline_bit_identical(self, seasonal_series):
        steps = [
            TransformStep(kind="trend", params={"f": 1.0, "h": 1.0, "m": 0.0}),
            TransformStep(kind="seasonal", params={"k": 1.0}),
            TransformStep(kind="translate", params={"c": 0.0}),
            TransformStep(kind="noise", params={"p": 0.0, "sigma_rel": 0.5}, seed=9),
        ]
        out = apply_pipeline(seasonal_series, steps)
        assert np.array_equal(out.transformed_values, seasonal_series.values)

    def test_compositional_equivalence_with_direct_trend_transform(self, seasonal_series):
        T = len(seasonal_series)
        step = TransformStep(kind="trend", params={"f": 2.0, "h": 1.0, "m": 0.0})
        out = apply_pipeline(seasonal_series, [step])

        d = stl_decompose(seasonal_series)
        fit = fit_trend_line(d.trend)
        trend = d.trend.copy()
        trend[:] = transform_trend(fit, Interval(1, T), f=2.0, h=1.0, m=0.0)
        expected = (trend + d.seasonal) + d.remainder
        np.testing.assert_array_equal(out.transformed_values, expected)

    def test_multi_step_mixed_pipeline_invariants(self, seasonal_series):
        T = len(seasonal_series)
        steps = [
            TransformStep(kind="trend", params={"f": 1.5}, interval=Interval(1, T // 2)),
            TransformStep(kind="translate", params={"c": 8.0}, interval=Interval(T // 2, T)),
            TransformStep(kind="noise", params={"p": 0.2, "sigma_rel": 0.3}, seed=5),
        ]
        out = apply_pipeline(seasonal_series, steps)
        c = out.components
        # exact additivity of the transformed components, canonical order
        assert np.array_equal(out.transformed_values, (c.trend + c.seasonal) + c.remainder)
        assert len(out.transformed_values) == T
        assert np.all(np.isfinite(out.transformed_values))

    def test_out_of_bounds_interval_names_step(self, seasonal_series):
        steps = [
            TransformStep(kind="seasonal", params={"k": 2.0}),
            TransformStep(kind="translate", params={"c": 1.0}, interval=Interval(1, 10_000)),
        ]
        with pytest.raises(ValidationError, match="step 1"):
            apply_pipeline(seasonal_series, steps)

    def test_determinism_with_noise(self, seasonal_series):
        steps = [TransformStep(kind="noise", params={"p": 0.5, "sigma_rel": 0.4}, seed=77)]
        a = apply_pipeline(seasonal_series, steps)
        b = apply_pipeline(seasonal_series, steps)
        assert np.array_equal(a.transformed_values, b.transformed_values)

    def test_step_locality_on_values_channel(self, seasonal_series):
        # translate+noise act on the remainder channel: values outside every
        # step interval come back unchanged up to reassembly rounding
        T = len(seasonal_series)
        steps = [TransformStep(kind="translate", params={"c": 5.0}, interval=Interval(1, T // 2))]
        out = apply_pipeline(seasonal_series, steps)
        np.testing.assert_allclose(
            out.transformed_values[T // 2:], seasonal_series.values[T // 2:], rtol=1e-12
        )
        np.testing.assert_allclose(
            out.transformed_values[: T // 2], seasonal_series.values[: T // 2] + 5.0, rtol=1e-12
        )


class TestParsePipeline:
    def test_round_trip(self):
        obj = [
            {"kind": "trend", "params": {"f": 2.0}, "interval": [1, 10]},
            {"kind": "noise", "params": {"p": 0.1, "sigma_rel": 0.2}, "seed": 4},
        ]
        steps = parse_pipeline(obj)
        assert steps[0].interval == Interval(1, 10)
        assert steps[1].seed == 4

    def test_error_names_step_index(self):
        with pytest.raises(ValidationError, match="step 1"):
            parse_pipeline([{"kind": "trend", "params": {}}, {"kind": "nope", "params": {}}])

    def test_accepts_json_string(self):
        steps = parse_pipeline('[{"kind": "seasonal", "params": {"k": 3.0}}]')
        assert steps[0].params["k"] == 3.0
