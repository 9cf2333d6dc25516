"""Seasonal-trend decomposition using loess.

Splits x_i into trend + seasonal + remainder. The inner loop alternates
cycle-subseries smoothing (seasonal estimate, detrended) with loess
smoothing of the deseasonalized series (trend estimate); an optional outer
loop downweights outliers with bisquare robustness weights. The remainder
is always recomputed as the exact residual x - trend - seasonal after the
final pass, so additivity holds by construction.

Loess here is locally weighted polynomial regression (degree 0 or 1) with
tricube weights. Neighborhoods are truncated at the boundaries: no padding
or reflection, just the nearest in-range points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, ValidationError
from .series import TimeSeries


@dataclass(frozen=True)
class StlConfig:
    """Decomposition hyper-parameters.

    seasonal_window "periodic" replaces each cycle-subseries by its mean
    (the infinite-window loess limit), which also pins every full-cycle
    mean of the seasonal component to exactly zero. Numeric windows must
    be odd and >= 3. trend_window defaults to the smallest odd integer
    >= 1.5 * sp / (1 - 1.5/seasonal_window), or >= 1.5 * sp for
    "periodic".

    inner_iterations=None picks 5 without robustness passes and 2 with
    them. Strong trends shed a within-cycle ramp into the periodic-mode
    seasonal that decays by roughly a factor of 7 per inner pass, so two
    passes are only enough when the outer loop iterates anyway.
    """

    seasonal_window: int | str = "periodic"
    trend_window: int | None = None
    inner_iterations: int | None = None
    robust_iterations: int = 0

    def __post_init__(self):
        if self.seasonal_window != "periodic":
            _check_window(int(self.seasonal_window))
        if self.trend_window is not None:
            _check_window(int(self.trend_window))
        if self.inner_iterations is not None and self.inner_iterations < 1:
            raise ConfigError("inner_iterations must be >= 1")
        if self.robust_iterations < 0:
            raise ConfigError("robust_iterations must be >= 0")

    @property
    def effective_inner_iterations(self) -> int:
        if self.inner_iterations is not None:
            return int(self.inner_iterations)
        return 2 if self.robust_iterations > 0 else 5

    def effective_trend_window(self, seasonal_period: int) -> int:
        if self.trend_window is not None:
            return int(self.trend_window)
        if self.seasonal_window == "periodic":
            target = 1.5 * seasonal_period
        else:
            target = 1.5 * seasonal_period / (1.0 - 1.5 / float(self.seasonal_window))
        return _next_odd(target)


@dataclass(frozen=True)
class Decomposition:
    """Additive components of one series: x = trend + seasonal + remainder."""

    trend: np.ndarray
    seasonal: np.ndarray
    remainder: np.ndarray
    seasonal_period: int

    def __post_init__(self):
        for name in ("trend", "seasonal", "remainder"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if not (len(self.trend) == len(self.seasonal) == len(self.remainder)):
            raise ValidationError("component lengths differ")

    def __len__(self) -> int:
        return len(self.trend)

    def reassemble(self) -> np.ndarray:
        """Component sum in the canonical order (trend + seasonal) + remainder."""
        return self.trend + self.seasonal + self.remainder


def _next_odd(x: float) -> int:
    n = int(np.ceil(x))
    return n if n % 2 == 1 else n + 1


def _check_window(window: int) -> None:
    if window < 3 or window % 2 == 0:
        raise ConfigError(f"loess window must be an odd integer >= 3, got {window}")


def _tricube(u: np.ndarray) -> np.ndarray:
    w = np.clip(1.0 - np.abs(u) ** 3, 0.0, None)
    return w ** 3


def _loess_at(
    y: np.ndarray,
    window: int,
    degree: int,
    positions: np.ndarray,
    rho: np.ndarray | None = None,
) -> np.ndarray:
    """Evaluate a loess fit of y (observed at 0..n-1) at arbitrary positions.

    For each query q the neighborhood is the min(window, n) observations
    nearest to q; tricube weights use the distance to the farthest neighbor
    (inflated by (window - n)/2 when the window exceeds the data, so very
    large windows tend to the global fit). rho are optional multiplicative
    robustness weights. Falls back to the weighted mean when the local
    degree-1 system is degenerate.
    """
    n = len(y)
    x = np.arange(n, dtype=np.float64)
    q = min(window, n)

    # fast path: evaluating on the full grid with symmetric interior windows,
    # where the weighted slope term vanishes and loess is one convolution
    half = (q - 1) // 2
    if (
        rho is None
        and q == window
        and half > 0
        and n > q
        and len(positions) == n
        and np.array_equal(positions, x)
    ):
        out = np.empty(n, dtype=np.float64)
        kernel = _tricube(np.abs(np.arange(-half, half + 1)) / half)
        out[half:n - half] = np.convolve(y, kernel, mode="valid") / kernel.sum()
        edges = np.concatenate([x[:half], x[n - half:]])
        edge_values = _loess_pointwise(y, window, degree, edges, rho)
        out[:half] = edge_values[:half]
        out[n - half:] = edge_values[half:]
        return out

    return _loess_pointwise(y, window, degree, positions, rho)


def _loess_pointwise(
    y: np.ndarray,
    window: int,
    degree: int,
    positions: np.ndarray,
    rho: np.ndarray | None,
) -> np.ndarray:
    n = len(y)
    x = np.arange(n, dtype=np.float64)
    q = min(window, n)
    out = np.empty(len(positions), dtype=np.float64)
    for k, pos in enumerate(positions):
        pos = float(pos)
        # nearest-q contiguous neighborhood around pos
        left = int(np.clip(round(pos) - (q - 1) // 2, 0, n - q))
        right = left + q
        # shift until the neighborhood is truly the q nearest points
        while left > 0 and abs(pos - x[left - 1]) < abs(x[right - 1] - pos):
            left -= 1
            right -= 1
        while right < n and abs(x[right] - pos) < abs(pos - x[left]):
            left += 1
            right += 1
        xi = x[left:right]
        yi = y[left:right]
        d = np.abs(xi - pos)
        radius = d.max()
        if window > n:
            radius += (window - n) / 2.0
        if radius <= 0:
            radius = 1.0
        w = _tricube(d / radius)
        if rho is not None:
            w = w * rho[left:right]
        sw = w.sum()
        if sw <= 0:
            # all weight vanished (can only happen with zero rho); fall back to plain mean
            out[k] = yi.mean()
            continue
        ybar = float(np.dot(w, yi) / sw)
        if degree == 0:
            out[k] = ybar
            continue
        xbar = float(np.dot(w, xi) / sw)
        sxx = float(np.dot(w, (xi - xbar) ** 2))
        if sxx <= 1e-12 * max(1.0, xbar * xbar):
            out[k] = ybar
            continue
        slope = float(np.dot(w, (xi - xbar) * yi) / sxx)
        out[k] = ybar + slope * (pos - xbar)
    return out


def loess_smooth(y, window: int, degree: int = 1) -> np.ndarray:
    """Tricube locally weighted regression evaluated at every index of y."""
    if degree not in (0, 1):
        raise ConfigError(f"degree must be 0 or 1, got {degree}")
    _check_window(window)
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1 or len(y) == 0:
        raise ValidationError("y must be a non-empty 1-d sequence")
    return _loess_at(y, window, degree, np.arange(len(y), dtype=np.float64))


def _moving_average(y: np.ndarray, width: int) -> np.ndarray:
    kernel = np.full(width, 1.0 / width)
    return np.convolve(y, kernel, mode="valid")


def _smooth_cycle_subseries(
    detrended: np.ndarray,
    sp: int,
    seasonal_window: int | str,
    rho: np.ndarray | None,
) -> np.ndarray:
    """Smooth each cycle-subseries and extend it one cycle on both ends.

    Returns an array of length T + 2*sp aligned so index e corresponds to
    original index e - sp.
    """
    T = len(detrended)
    ext = np.empty(T + 2 * sp, dtype=np.float64)
    for phase in range(sp):
        sub = detrended[phase::sp]
        rho_sub = rho[phase::sp] if rho is not None else None
        m = len(sub)
        if seasonal_window == "periodic":
            if rho_sub is not None and rho_sub.sum() > 0:
                val = float(np.dot(rho_sub, sub) / rho_sub.sum())
            else:
                val = float(sub.mean())
            smoothed = np.full(m + 2, val)
        else:
            positions = np.arange(-1, m + 1, dtype=np.float64)
            smoothed = _loess_at(sub, int(seasonal_window), 1, positions, rho_sub)
        # cycle position j = -1..m maps to extended slot sp + phase + j*sp
        slots = sp + phase + np.arange(-1, m + 1) * sp
        ext[slots] = smoothed
    return ext


def _low_pass(ext: np.ndarray, sp: int) -> np.ndarray:
    """Classic STL low-pass: MA(sp) twice, MA(3), then loess(degree 1).

    Consumes the one-cycle extension on each side, returning length T.
    """
    out = _moving_average(ext, sp)
    out = _moving_average(out, sp)
    out = _moving_average(out, 3)
    lp_window = _next_odd(sp)
    return _loess_at(out, lp_window, 1, np.arange(len(out), dtype=np.float64))


def _bisquare(u: np.ndarray) -> np.ndarray:
    w = np.clip(1.0 - u ** 2, 0.0, None)
    return w ** 2


def stl_decompose(x: TimeSeries, cfg: StlConfig = StlConfig()) -> Decomposition:
    """Decompose a series into trend + seasonal + remainder.

    Deterministic; requires T >= 3 * seasonal_period. The remainder is the
    exact residual of the canonical sum, so
    (trend + seasonal) + remainder == values elementwise.
    """
    sp = x.seasonal_period
    values = np.asarray(x.values, dtype=np.float64)
    T = len(values)
    if T < 3 * sp:
        raise ValidationError(
            f"series {x.id!r}: insufficient length for period "
            f"(T={T} < 3*seasonal_period={3 * sp})"
        )
    trend_window = cfg.effective_trend_window(sp)
    trend = np.zeros(T)
    seasonal = np.zeros(T)
    rho: np.ndarray | None = None
    grid = np.arange(T, dtype=np.float64)

    for outer in range(cfg.robust_iterations + 1):
        for _ in range(cfg.effective_inner_iterations):
            detrended = values - trend
            ext = _smooth_cycle_subseries(detrended, sp, cfg.seasonal_window, rho)
            seasonal = ext[sp:sp + T] - _low_pass(ext, sp)
            deseasonalized = values - seasonal
            trend = _loess_at(deseasonalized, trend_window, 1, grid, rho)
        if outer < cfg.robust_iterations:
            resid = values - trend - seasonal
            scale = 6.0 * np.median(np.abs(resid))
            if scale < 1e-12 * (1.0 + float(np.abs(values).max())):
                rho = np.ones(T)
            else:
                rho = _bisquare(resid / scale)

    remainder = values - (trend + seasonal)
    return Decomposition(
        trend=trend, seasonal=seasonal, remainder=remainder, seasonal_period=sp
    )
