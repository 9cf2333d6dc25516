"""Forecast error metrics: MASE (primary), MAE and sMAPE.

MASE scales absolute forecast errors by the in-sample seasonal-naive mean
absolute error, so values are comparable across series of different
scales; a value of 1 matches the naive forecaster. Aggregation is
per-series first (mean over horizons), then summarized across series;
summaries report that ordering in their metadata.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError

METRIC_NAMES = ("mase", "mae", "smape")

AGGREGATION_NOTE = "per-series mean over horizons, then summarized across series"


@dataclass(frozen=True)
class HorizonErrors:
    """Error at each forecast step plus their mean."""

    per_horizon: np.ndarray
    aggregate: float

    def __post_init__(self):
        arr = np.asarray(self.per_horizon, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "per_horizon", arr)

    @classmethod
    def from_per_horizon(cls, per_horizon: np.ndarray) -> "HorizonErrors":
        per_horizon = np.asarray(per_horizon, dtype=np.float64)
        return cls(per_horizon=per_horizon, aggregate=float(per_horizon.mean()))


@dataclass(frozen=True)
class ErrorSummary:
    """Across-series distribution of errors.

    mean/median/std summarize the per-series aggregates (std is the
    population std so a singleton summarizes to 0); horizon_mean is the
    mean error curve and band_low/band_high its 25th/75th percentiles
    across series at each horizon.
    """

    mean: float
    median: float
    std: float
    horizon_mean: np.ndarray
    band_low: np.ndarray
    band_high: np.ndarray
    n_series: int

    def to_json_obj(self) -> dict:
        return {
            "mean": self.mean,
            "median": self.median,
            "std": self.std,
            "horizon_mean": self.horizon_mean.tolist(),
            "band_low": self.band_low.tolist(),
            "band_high": self.band_high.tolist(),
            "n_series": self.n_series,
            "aggregation": AGGREGATION_NOTE,
        }


def _check_shapes(actual: np.ndarray, forecast: np.ndarray) -> None:
    if actual.shape != forecast.shape or actual.ndim != 1 or len(actual) == 0:
        raise ValidationError(
            f"actual and forecast must be equal-length 1-d sequences, "
            f"got {actual.shape} and {forecast.shape}"
        )


def mase(actual, forecast, insample, sp: int) -> HorizonErrors:
    """Mean absolute scaled error, horizon resolved.

    The scale D is the in-sample seasonal-naive MAE,
    mean over j > sp of |insample[j] - insample[j - sp]|; raises when the
    series is scale-free (D ~ 0, the naive in-sample forecast is perfect).
    """
    actual = np.asarray(actual, dtype=np.float64)
    forecast = np.asarray(forecast, dtype=np.float64)
    insample = np.asarray(insample, dtype=np.float64)
    _check_shapes(actual, forecast)
    if sp < 1:
        raise ValidationError("sp must be >= 1")
    if len(insample) <= sp:
        raise ValidationError(
            f"insample length {len(insample)} must exceed seasonal period {sp}"
        )
    scale = float(np.mean(np.abs(insample[sp:] - insample[:-sp])))
    if scale < 1e-12:
        raise ValidationError(
            "scale-free series: in-sample seasonal-naive error is ~0, MASE undefined"
        )
    per_horizon = np.abs(actual - forecast) / scale
    return HorizonErrors.from_per_horizon(per_horizon)


def mae(actual, forecast, insample=None, sp: int | None = None) -> HorizonErrors:
    """Mean absolute error (insample/sp accepted for interface parity)."""
    actual = np.asarray(actual, dtype=np.float64)
    forecast = np.asarray(forecast, dtype=np.float64)
    _check_shapes(actual, forecast)
    return HorizonErrors.from_per_horizon(np.abs(actual - forecast))


def smape(actual, forecast, insample=None, sp: int | None = None) -> HorizonErrors:
    """Symmetric MAPE in percent (0..200); 0 where both values are 0."""
    actual = np.asarray(actual, dtype=np.float64)
    forecast = np.asarray(forecast, dtype=np.float64)
    _check_shapes(actual, forecast)
    diff = np.abs(actual - forecast)
    denom = (np.abs(actual) + np.abs(forecast)) / 2.0
    per_horizon = np.divide(diff, denom, out=np.zeros_like(diff), where=denom > 0.0) * 100.0
    return HorizonErrors.from_per_horizon(per_horizon)


def compute_errors(metric: str, actual, forecast, insample, sp: int) -> HorizonErrors:
    """Uniform entry point over the supported metrics."""
    if metric == "mase":
        return mase(actual, forecast, insample, sp)
    if metric == "mae":
        return mae(actual, forecast)
    if metric == "smape":
        return smape(actual, forecast)
    raise ValidationError(f"unknown metric {metric!r}; choose from {METRIC_NAMES}")


def summarize(errors: list[HorizonErrors]) -> ErrorSummary:
    """Across-series summary; all entries must share the same horizon."""
    if not errors:
        raise ValidationError("cannot summarize an empty error list")
    horizons = {len(e.per_horizon) for e in errors}
    if len(horizons) != 1:
        raise ValidationError(f"mixed horizons in error list: {sorted(horizons)}")
    aggregates = np.array([e.aggregate for e in errors])
    matrix = np.stack([e.per_horizon for e in errors])   # (n_series, H)
    return ErrorSummary(
        mean=float(aggregates.mean()),
        median=float(np.median(aggregates)),
        std=float(aggregates.std(ddof=0)),
        horizon_mean=matrix.mean(axis=0),
        band_low=np.percentile(matrix, 25.0, axis=0),
        band_high=np.percentile(matrix, 75.0, axis=0),
        n_series=len(errors),
    )
