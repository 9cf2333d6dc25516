"""The four-feature series representation.

From a decomposition we compute trend strength, seasonal strength, trend
linearity and trend slope. Strengths compare the remainder variance with
the deseasonalized (trend + remainder) and detrended (seasonal + remainder)
variances; linearity and slope come from an ordinary least squares line
fitted to the trend component against the 1-based observation index. All
variances use the sample (T - 1) denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import Decomposition
from .exceptions import ValidationError

FEATURE_NAMES = ("trend_strength", "seasonal_strength", "trend_linearity", "trend_slope")


@dataclass(frozen=True)
class TrendFit:
    """OLS line through the trend component, t_i = beta0 + beta1*i + dev_i.

    The index i is 1-based, and deviations are the exact residuals, so the
    identity above holds to float precision.
    """

    beta0: float
    beta1: float
    deviations: np.ndarray

    def __post_init__(self):
        dev = np.asarray(self.deviations, dtype=np.float64)
        dev.flags.writeable = False
        object.__setattr__(self, "deviations", dev)

    def line(self, n: int | None = None) -> np.ndarray:
        """Fitted line evaluated at i = 1..n (defaults to the fitted length)."""
        if n is None:
            n = len(self.deviations)
        i = np.arange(1, n + 1, dtype=np.float64)
        return self.beta0 + self.beta1 * i


@dataclass(frozen=True)
class FeatureVector:
    """Per-series features; the first three live in [0, 1].

    ``flags`` records which strengths were forced to zero by a degenerate
    (zero-variance) denominator so downstream views can annotate them.
    """

    trend_strength: float
    seasonal_strength: float
    trend_linearity: float
    trend_slope: float
    flags: tuple[str, ...] = field(default=())

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.trend_strength, self.seasonal_strength, self.trend_linearity, self.trend_slope],
            dtype=np.float64,
        )

    def to_dict(self) -> dict:
        d = {name: float(getattr(self, name)) for name in FEATURE_NAMES}
        d["flags"] = list(self.flags)
        return d


def fit_trend_line(trend) -> TrendFit:
    """Least-squares line through the trend component at i = 1..T."""
    t = np.asarray(trend, dtype=np.float64)
    if t.ndim != 1 or len(t) < 2:
        raise ValidationError("trend must be a 1-d sequence of length >= 2")
    i = np.arange(1, len(t) + 1, dtype=np.float64)
    ibar = i.mean()
    tbar = t.mean()
    sxx = float(np.dot(i - ibar, i - ibar))
    beta1 = float(np.dot(i - ibar, t - tbar) / sxx)
    beta0 = tbar - beta1 * ibar
    deviations = t - (beta0 + beta1 * i)
    return TrendFit(beta0=float(beta0), beta1=beta1, deviations=deviations)


def _sample_var(a: np.ndarray) -> float:
    if len(a) < 2:
        return 0.0
    return float(np.var(a, ddof=1))


def compute_features(d: Decomposition) -> FeatureVector:
    """Features of one decomposition; degenerate denominators yield 0 + flag."""
    r = d.remainder
    deseasonalized = d.trend + d.remainder
    detrended = d.seasonal + d.remainder

    var_r = _sample_var(r)
    flags: list[str] = []

    var_deseas = _sample_var(deseasonalized)
    if var_deseas <= 0.0:
        f1 = 0.0
        flags.append("flat_deseasonalized")
    else:
        f1 = max(0.0, 1.0 - var_r / var_deseas)

    var_detr = _sample_var(detrended)
    if var_detr <= 0.0:
        f2 = 0.0
        flags.append("flat_detrended")
    else:
        f2 = max(0.0, 1.0 - var_r / var_detr)

    fit = fit_trend_line(d.trend)
    var_t = _sample_var(d.trend)
    if var_t <= 0.0:
        f3 = 0.0
        flags.append("flat_trend")
    else:
        f3 = max(0.0, 1.0 - _sample_var(fit.deviations) / var_t)

    return FeatureVector(
        trend_strength=f1,
        seasonal_strength=f2,
        trend_linearity=f3,
        trend_slope=fit.beta1,
        flags=tuple(flags),
    )
