"""Interval-scoped series transformations and pipeline application.

Six families: trend reshaping via (f, h, m) against the OLS trend line,
seasonal amplitude scaling via k, mean-level translation, and seeded
Gaussian perturbation of a fraction of points. Every transformation is
scoped to a 1-based inclusive index interval; [1, T] means the whole
series.

A pipeline decomposes the series once, edits the components (trend and
seasonal steps edit their own component; translate and noise edit the
remainder channel, keeping additivity exact), then reassembles
x~ = (trend + seasonal) + remainder in that fixed order. Steps whose
parameters are the identity are skipped outright, so an all-identity
pipeline returns the input values bit for bit.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .decomposition import Decomposition, StlConfig, stl_decompose
from .exceptions import ParameterError, ValidationError
from .features import TrendFit, fit_trend_line
from .series import TimeSeries

KINDS = ("trend", "seasonal", "translate", "noise")


@dataclass(frozen=True)
class Interval:
    """1-based inclusive index range."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 1 or self.end < self.start:
            raise ValidationError(f"invalid interval [{self.start}, {self.end}]")

    def validate_against(self, T: int) -> None:
        if self.end > T:
            raise ValidationError(
                f"interval [{self.start}, {self.end}] exceeds series length {T}"
            )

    def slice(self) -> slice:
        """0-based slice covering the interval."""
        return slice(self.start - 1, self.end)

    def indices(self) -> np.ndarray:
        return np.arange(self.start - 1, self.end)

    def __len__(self) -> int:
        return self.end - self.start + 1


_PARAM_KEYS = {
    "trend": ("f", "h", "m"),
    "seasonal": ("k",),
    "translate": ("c",),
    "noise": ("p", "sigma_rel"),
}

_IDENTITY_PARAMS = {
    "trend": {"f": 1.0, "h": 1.0, "m": 0.0},
    "seasonal": {"k": 1.0},
    "translate": {"c": 0.0},
    "noise": {"p": 0.0, "sigma_rel": 0.0},
}


@dataclass(frozen=True)
class TransformStep:
    """One parameterized transformation scoped to an interval.

    ``interval=None`` resolves to the whole series when applied. ``seed``
    is only consulted by noise steps.
    """

    kind: str
    params: dict
    interval: Interval | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown transform kind {self.kind!r}")
        expected = _PARAM_KEYS[self.kind]
        unknown = set(self.params) - set(expected)
        if unknown:
            raise ParameterError(f"{self.kind} step: unknown params {sorted(unknown)}")
        params = {k: float(self.params.get(k, _IDENTITY_PARAMS[self.kind][k])) for k in expected}
        if self.kind == "trend" and params["h"] == 0.0:
            raise ParameterError("trend step: h must be nonzero")
        if self.kind == "noise":
            if not 0.0 <= params["p"] <= 1.0:
                raise ParameterError("noise step: p must be in [0, 1]")
            if params["sigma_rel"] < 0.0:
                raise ParameterError("noise step: sigma_rel must be >= 0")
        object.__setattr__(self, "params", params)

    def is_identity(self) -> bool:
        ident = _IDENTITY_PARAMS[self.kind]
        if self.kind == "noise":
            return self.params["p"] == 0.0 or self.params["sigma_rel"] == 0.0
        return all(self.params[k] == v for k, v in ident.items())

    def resolve_interval(self, T: int) -> Interval:
        iv = self.interval if self.interval is not None else Interval(1, T)
        iv.validate_against(T)
        return iv

    def to_json_obj(self) -> dict:
        obj = {"kind": self.kind, "params": dict(self.params)}
        if self.interval is not None:
            obj["interval"] = [self.interval.start, self.interval.end]
        if self.kind == "noise":
            obj["seed"] = self.seed
        return obj


@dataclass(frozen=True)
class TransformedSeries:
    """Result of applying a pipeline: new values plus the edited components.

    transformed_values equals components.reassemble() under the canonical
    summation order.
    """

    original: TimeSeries
    transformed_values: np.ndarray
    components: Decomposition

    def __post_init__(self):
        arr = np.asarray(self.transformed_values, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "transformed_values", arr)

    def to_series(self, id_suffix: str = "-transformed") -> TimeSeries:
        return self.original.with_values(self.transformed_values, id_suffix=id_suffix)


def transform_trend(fit: TrendFit, interval: Interval, f: float, h: float, m: float) -> np.ndarray:
    """New trend values on the interval:

        t~_i = beta0 + f * (beta1 * i + dev_i / h) + m * beta0 * i

    with i the 1-based index. The fit must be the global OLS fit of the
    series' full trend component.
    """
    if h == 0.0:
        raise ParameterError("h must be nonzero")
    interval.validate_against(len(fit.deviations))
    i = np.arange(interval.start, interval.end + 1, dtype=np.float64)
    dev = fit.deviations[interval.slice()]
    return fit.beta0 + f * (fit.beta1 * i + dev / h) + m * fit.beta0 * i


def transform_seasonal(seasonal, interval: Interval, k: float) -> np.ndarray:
    """Scale the seasonal component by k on the interval, untouched elsewhere."""
    s = np.asarray(seasonal, dtype=np.float64)
    interval.validate_against(len(s))
    out = s.copy()
    out[interval.slice()] = k * out[interval.slice()]
    return out


def translate_level(values, interval: Interval, c: float) -> np.ndarray:
    """Add the constant c on the interval, untouched elsewhere."""
    v = np.asarray(values, dtype=np.float64)
    interval.validate_against(len(v))
    out = v.copy()
    out[interval.slice()] += c
    return out


def _sample_std(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def _noise_delta(
    n: int, interval: Interval, p: float, sigma: float, seed: int
) -> np.ndarray:
    """Seeded sparse Gaussian perturbation as a full-length delta array.

    floor(p * |interval|) interval indices are chosen by a seeded shuffle;
    each receives N(0, sigma^2) noise.
    """
    delta = np.zeros(n)
    count = int(np.floor(p * len(interval)))
    if count == 0 or sigma == 0.0:
        return delta
    rng = np.random.default_rng(seed)
    chosen = rng.permutation(interval.indices())[:count]
    delta[chosen] = sigma * rng.standard_normal(count)
    return delta


def add_noise(values, interval: Interval, p: float, sigma_rel: float, seed: int) -> np.ndarray:
    """Perturb a seeded random ~p fraction of interval points with Gaussian
    noise of standard deviation sigma_rel times the sample std of values."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must be in [0, 1]")
    if sigma_rel < 0.0:
        raise ParameterError("sigma_rel must be >= 0")
    v = np.asarray(values, dtype=np.float64)
    interval.validate_against(len(v))
    return v + _noise_delta(len(v), interval, p, sigma_rel * _sample_std(v), seed)


def apply_pipeline(
    x: TimeSeries,
    steps: list[TransformStep] | tuple[TransformStep, ...],
    stl: StlConfig = StlConfig(),
) -> TransformedSeries:
    """Decompose once, run every step against the components, reassemble.

    Trend steps evaluate the (f, h, m) formula against the fixed global
    trend fit and overwrite their interval; seasonal scaling composes
    multiplicatively; translate and noise accumulate on the remainder
    channel. An empty or all-identity pipeline returns the original
    values bit-identically.
    """
    values = np.asarray(x.values, dtype=np.float64)
    T = len(values)
    intervals = []
    for idx, step in enumerate(steps):
        try:
            intervals.append(step.resolve_interval(T))
        except ValidationError as exc:
            raise ValidationError(f"step {idx}: {exc}") from exc

    decomp = stl_decompose(x, stl)
    fit = fit_trend_line(decomp.trend)

    trend = decomp.trend.copy()
    seasonal = decomp.seasonal.copy()
    remainder = decomp.remainder.copy()
    series_std = _sample_std(values)
    changed = False

    for step, interval in zip(steps, intervals):
        if step.is_identity():
            continue
        changed = True
        if step.kind == "trend":
            p = step.params
            if p["m"] != 0.0 and abs(fit.beta0) <= 1e-9 * series_std:
                warnings.warn(
                    "trend transform: intercept is ~0, the m slope term has no effect",
                    RuntimeWarning,
                    stacklevel=2,
                )
            trend[interval.slice()] = transform_trend(fit, interval, p["f"], p["h"], p["m"])
        elif step.kind == "seasonal":
            seasonal = transform_seasonal(seasonal, interval, step.params["k"])
        elif step.kind == "translate":
            remainder = translate_level(remainder, interval, step.params["c"])
        elif step.kind == "noise":
            sigma = step.params["sigma_rel"] * series_std
            remainder = remainder + _noise_delta(
                T, interval, step.params["p"], sigma, step.seed
            )

    if not changed:
        return TransformedSeries(
            original=x, transformed_values=values, components=decomp
        )
    components = Decomposition(
        trend=trend,
        seasonal=seasonal,
        remainder=remainder,
        seasonal_period=x.seasonal_period,
    )
    return TransformedSeries(
        original=x,
        transformed_values=components.reassemble(),
        components=components,
    )


def parse_pipeline(obj) -> tuple[TransformStep, ...]:
    """Build steps from the JSON schema:

        [{"kind": ..., "params": {...}, "interval": [start, end], "seed": ...}, ...]

    interval and seed are optional. Raises ValidationError naming the step
    index on any malformed entry.
    """
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if not isinstance(obj, list):
        raise ValidationError("pipeline must be a JSON list of steps")
    steps = []
    for idx, entry in enumerate(obj):
        try:
            if not isinstance(entry, dict):
                raise ParameterError("step must be a JSON object")
            kind = entry.get("kind")
            params = entry.get("params", {})
            interval = None
            if entry.get("interval") is not None:
                raw = entry["interval"]
                if not (isinstance(raw, (list, tuple)) and len(raw) == 2):
                    raise ParameterError("interval must be a [start, end] pair")
                interval = Interval(int(raw[0]), int(raw[1]))
            steps.append(
                TransformStep(
                    kind=kind,
                    params=params,
                    interval=interval,
                    seed=int(entry.get("seed", 0)),
                )
            )
        except (ValidationError, TypeError, ValueError) as exc:
            raise ValidationError(f"step {idx}: {exc}") from exc
    return tuple(steps)


def pipeline_to_json(steps) -> list:
    return [step.to_json_obj() for step in steps]
