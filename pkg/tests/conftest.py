import numpy as np
import pytest

from tsprobe import Dataset, TimeSeries


def make_series(values, sid="s0", sp=24):
    return TimeSeries(
        id=sid, start="2020-01-01T00:00:00", freq="1H", values=values, seasonal_period=sp
    )


@pytest.fixture
def trend_sine_series():
    """x_i = 2i + 5 sin(2*pi*i/24), T=240: strong trend plus daily seasonality."""
    i = np.arange(240, dtype=float)
    return make_series(2.0 * i + 5.0 * np.sin(2.0 * np.pi * i / 24.0), sid="trend-sine")


@pytest.fixture
def seasonal_series():
    """Mildly noisy seasonal series with a positive level, T=192."""
    rng = np.random.default_rng(11)
    i = np.arange(192, dtype=float)
    x = 30.0 + 6.0 * np.sin(2.0 * np.pi * i / 24.0) + 0.3 * rng.standard_normal(192)
    return make_series(x, sid="seasonal")


@pytest.fixture
def small_dataset():
    rng = np.random.default_rng(3)
    i = np.arange(240, dtype=float)

    def gen(sid, level, amp, slope, noise):
        x = level + slope * i + amp * np.sin(2 * np.pi * i / 24) + noise * rng.standard_normal(240)
        return make_series(x, sid=sid)

    train = (gen("t0", 20, 5, 0.02, 0.3), gen("t1", 40, 3, -0.01, 0.4), gen("t2", 30, 7, 0.0, 0.2))
    test = (gen("e0", 25, 4, 0.01, 0.3), gen("e1", 35, 6, 0.0, 0.5))
    return Dataset(
        name="small", train=train, test=test, forecast_horizon=24, context_length=96
    )
