"""Canonical univariate time series and dataset containers.

A dataset is stored as JSON Lines, one series per line:

    {"id": "a", "start": "2020-01-01T00:00:00", "freq": "1H", "target": [..]}

An optional fifth key ``"split"`` ("train" or "test") routes a line into the
corresponding dataset split; lines without it land in train. Files ending in
``.jsonl.gz`` are transparently decompressed. Timestamps and ``freq`` are
carried as opaque metadata; all internal arithmetic is index based.
"""

from __future__ import annotations

import gzip
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import ParseError, ValidationError

DEFAULT_SEASONAL_PERIOD = 24


def _as_readonly_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """One univariate series with opaque time metadata.

    ``values`` is a read-only float64 array; ``seasonal_period`` is the
    number of observations per seasonal cycle (e.g. 24 for hourly data
    with a daily cycle).
    """

    id: str
    start: str
    freq: str
    values: np.ndarray
    seasonal_period: int = DEFAULT_SEASONAL_PERIOD

    def __post_init__(self):
        object.__setattr__(self, "values", _as_readonly_array(self.values))
        if self.values.ndim != 1 or len(self.values) < 1:
            raise ValidationError(f"series {self.id!r}: values must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(self.values)):
            raise ValidationError(f"series {self.id!r}: values contain NaN or Inf")
        if int(self.seasonal_period) < 2:
            raise ValidationError(f"series {self.id!r}: seasonal_period must be >= 2")
        object.__setattr__(self, "seasonal_period", int(self.seasonal_period))

    def __len__(self) -> int:
        return len(self.values)

    def with_values(self, values, id_suffix: str = "") -> "TimeSeries":
        """Copy of this series with new values (and optionally a new id)."""
        return TimeSeries(
            id=self.id + id_suffix,
            start=self.start,
            freq=self.freq,
            values=values,
            seasonal_period=self.seasonal_period,
        )

    def to_record(self, split: str | None = None) -> dict:
        rec = {
            "id": self.id,
            "start": self.start,
            "freq": self.freq,
            "target": [float(v) for v in self.values],
        }
        if split is not None:
            rec["split"] = split
        return rec


@dataclass(frozen=True)
class Dataset:
    """Train/test container plus the forecasting task geometry."""

    name: str
    train: tuple[TimeSeries, ...]
    test: tuple[TimeSeries, ...]
    forecast_horizon: int
    context_length: int

    def __post_init__(self):
        object.__setattr__(self, "train", tuple(self.train))
        object.__setattr__(self, "test", tuple(self.test))
        if self.forecast_horizon < 1:
            raise ValidationError("forecast_horizon must be positive")
        if self.context_length < 1:
            raise ValidationError("context_length must be positive")
        for split_name, split in (("train", self.train), ("test", self.test)):
            seen = set()
            for ts in split:
                if ts.id in seen:
                    raise ValidationError(f"duplicate id {ts.id!r} in {split_name} split")
                seen.add(ts.id)
        for ts in self.test:
            if len(ts) <= self.forecast_horizon:
                raise ValidationError(
                    f"test series {ts.id!r} has length {len(ts)}, "
                    f"needs more than horizon {self.forecast_horizon}"
                )

    @property
    def seasonal_period(self) -> int:
        for ts in self.train + self.test:
            return ts.seasonal_period
        return DEFAULT_SEASONAL_PERIOD

    def get(self, series_id: str) -> tuple[TimeSeries, str]:
        """Look up a series by id in either split; returns (series, split)."""
        for ts in self.train:
            if ts.id == series_id:
                return ts, "train"
        for ts in self.test:
            if ts.id == series_id:
                return ts, "test"
        raise KeyError(series_id)

    def iter_with_split(self):
        for ts in self.train:
            yield ts, "train"
        for ts in self.test:
            yield ts, "test"


def _open_maybe_gzip(path: Path, mode: str):
    if str(path).endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def load_jsonl(
    path,
    horizon: int,
    context: int,
    seasonal_period: int = DEFAULT_SEASONAL_PERIOD,
    name: str | None = None,
) -> Dataset:
    """Read a JSONL (or .jsonl.gz) dataset file, preserving line order.

    Raises ParseError naming the offending line for malformed JSON, and
    ValidationError naming the series id for non-finite targets.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")
    train: list[TimeSeries] = []
    test: list[TimeSeries] = []
    with _open_maybe_gzip(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(rec, dict):
                raise ParseError(f"{path}: line {lineno}: expected a JSON object")
            missing = {"id", "start", "freq", "target"} - rec.keys()
            if missing:
                raise ParseError(
                    f"{path}: line {lineno}: missing keys {sorted(missing)}"
                )
            target = rec["target"]
            if not isinstance(target, list) or any(
                not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v)
                for v in target
            ):
                raise ValidationError(
                    f"series {rec['id']!r}: target must be a list of finite numbers"
                )
            ts = TimeSeries(
                id=str(rec["id"]),
                start=str(rec["start"]),
                freq=str(rec["freq"]),
                values=target,
                seasonal_period=seasonal_period,
            )
            split = rec.get("split", "train")
            if split == "train":
                train.append(ts)
            elif split == "test":
                test.append(ts)
            else:
                raise ParseError(f"{path}: line {lineno}: unknown split {split!r}")
    return Dataset(
        name=name if name is not None else path.stem.replace(".jsonl", ""),
        train=tuple(train),
        test=tuple(test),
        forecast_horizon=horizon,
        context_length=context,
    )


def save_jsonl(dataset: Dataset, path) -> None:
    """Write a dataset back to JSONL (or .jsonl.gz), train lines first."""
    path = Path(path)
    with _open_maybe_gzip(path, "w") as fh:
        for ts in dataset.train:
            fh.write(json.dumps(ts.to_record(split="train")) + "\n")
        for ts in dataset.test:
            fh.write(json.dumps(ts.to_record(split="test")) + "\n")


@dataclass(frozen=True)
class SynthConfig:
    """Uniform draw ranges for the synthetic generator.

    Each series is x_i = a + b*i + c*sin(2*pi*i/sp) + eps_i with i = 0..T-1,
    eps_i ~ N(0, sigma^2), and (a, b, c, sigma) drawn per series from the
    ranges below. Collapse a range to a point to pin that parameter.
    """

    level_range: tuple[float, float] = (10.0, 100.0)     # a
    slope_range: tuple[float, float] = (-0.05, 0.05)     # b
    amplitude_range: tuple[float, float] = (1.0, 10.0)   # c
    noise_range: tuple[float, float] = (0.1, 1.0)        # sigma

    def __post_init__(self):
        for lo, hi in (self.level_range, self.slope_range, self.amplitude_range, self.noise_range):
            if lo > hi:
                raise ValidationError("range lower bound exceeds upper bound")
        if self.noise_range[0] < 0:
            raise ValidationError("noise sigma must be non-negative")


def synthesize_dataset(
    n_series: int,
    T: int,
    seasonal_period: int = DEFAULT_SEASONAL_PERIOD,
    seed: int = 0,
    n_test: int = 0,
    T_test: int | None = None,
    horizon: int = 24,
    context: int = 168,
    config: SynthConfig = SynthConfig(),
    name: str = "synthetic",
) -> Dataset:
    """Deterministic trend+seasonal+noise dataset for tests and experiments.

    Produces ``n_series`` train series of length ``T`` and ``n_test`` test
    series of length ``T_test`` (defaults to ``T``). Pure function of its
    arguments: the same call always yields identical data.
    """
    if n_series < 1:
        raise ValidationError("n_series must be positive")
    if T < 3 * seasonal_period:
        raise ValidationError(
            f"T={T} too short: need at least 3*seasonal_period={3 * seasonal_period}"
        )
    if T_test is None:
        T_test = T
    rng = np.random.default_rng(seed)

    def draw_series(idx: int, length: int, split: str) -> TimeSeries:
        a = rng.uniform(*config.level_range)
        b = rng.uniform(*config.slope_range)
        c = rng.uniform(*config.amplitude_range)
        sigma = rng.uniform(*config.noise_range)
        i = np.arange(length, dtype=np.float64)
        x = a + b * i + c * np.sin(2.0 * np.pi * i / seasonal_period)
        x = x + sigma * rng.standard_normal(length)
        return TimeSeries(
            id=f"{split}-{idx:04d}",
            start="2020-01-01T00:00:00",
            freq="1H",
            values=x,
            seasonal_period=seasonal_period,
        )

    train = tuple(draw_series(i, T, "train") for i in range(n_series))
    test = tuple(draw_series(i, T_test, "test") for i in range(n_test))
    return Dataset(
        name=name,
        train=train,
        test=test,
        forecast_horizon=horizon,
        context_length=context,
    )
