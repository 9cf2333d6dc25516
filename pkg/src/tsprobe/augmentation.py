"""Level-jump augmentation and the three-regime retraining experiment.

Identify an undersampled instance-space region with an axis-threshold
selector, generate level-jump training data covering it (a multiplicative
boost from a random split index to the series end), retrain the forecaster
on original / augmented / combined data, and compare MASE summaries on the
full test set and on the selected region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import StlConfig, stl_decompose
from .exceptions import ValidationError
from .features import compute_features
from .forecasting import DenseNetConfig, train_dense
from .instance_space import InstanceSpace, fit_pca, project
from .metrics import AGGREGATION_NOTE, mase, summarize
from .series import Dataset, SynthConfig, TimeSeries, synthesize_dataset


@dataclass(frozen=True)
class JumpAugmentConfig:
    """Split and boost draw ranges for the level-jump transform.

    The split index is drawn uniformly from the integers
    {split_low..split_high} (1-based, inclusive) and the boost factor
    uniformly from [factor_low, factor_high].
    """

    split_low: int = 72
    split_high: int = 144
    factor_low: float = 2.0
    factor_high: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if not (1 <= self.split_low <= self.split_high):
            raise ValidationError("need 1 <= split_low <= split_high")
        if not (0 < self.factor_low <= self.factor_high):
            raise ValidationError("need 0 < factor_low <= factor_high")


@dataclass(frozen=True)
class RegionSelector:
    """Axis-threshold region of the instance space."""

    axis: int = 0
    threshold: float = 0.0
    direction: str = "greater"

    def __post_init__(self):
        if self.axis not in (0, 1):
            raise ValidationError("axis must be 0 or 1")
        if self.direction not in ("greater", "less"):
            raise ValidationError("direction must be 'greater' or 'less'")

    def matches(self, point: tuple[float, float]) -> bool:
        v = point[self.axis]
        return v > self.threshold if self.direction == "greater" else v < self.threshold

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RegionSelector":
        return cls(
            axis=int(obj.get("axis", 0)),
            threshold=float(obj["threshold"]),
            direction=str(obj.get("direction", "greater")),
        )


def jump_augment(ds: Dataset, cfg: JumpAugmentConfig) -> Dataset:
    """One level-jump copy of every train series, ids suffixed "-aug".

    For each series a split index and a factor are drawn (in train order,
    from a single generator seeded with cfg.seed) and values from the
    split to the end are multiplied by the factor. Values before the
    split are untouched; the test split passes through unchanged.
    """
    rng = np.random.default_rng(cfg.seed)
    augmented: list[TimeSeries] = []
    for ts in ds.train:
        if len(ts) < cfg.split_high:
            raise ValidationError(
                f"series {ts.id!r} has length {len(ts)} < split_high {cfg.split_high}"
            )
        split = int(rng.integers(cfg.split_low, cfg.split_high + 1))
        factor = float(rng.uniform(cfg.factor_low, cfg.factor_high))
        values = np.asarray(ts.values, dtype=np.float64).copy()
        values[split - 1:] *= factor
        augmented.append(ts.with_values(values, id_suffix="-aug"))
    return Dataset(
        name=ds.name + "-aug",
        train=tuple(augmented),
        test=ds.test,
        forecast_horizon=ds.forecast_horizon,
        context_length=ds.context_length,
    )


def select_region(space: InstanceSpace, sel: RegionSelector, split: str = "test") -> list[str]:
    """Ids (in sorted order) of the split's points inside the region."""
    return sorted(
        sid
        for sid, (c0, c1, tag) in space.points.items()
        if tag == split and sel.matches((c0, c1))
    )


def dataset_features(ds: Dataset, stl: StlConfig = StlConfig()) -> list[tuple]:
    """(id, split, FeatureVector) for every series in both splits."""
    out = []
    for ts, split in ds.iter_with_split():
        fv = compute_features(stl_decompose(ts, stl))
        out.append((ts.id, split, fv))
    return out


def _evaluate(model, ds: Dataset, ids: list[str] | None = None) -> dict:
    """Per-series MASE of a model on test series (optionally restricted).

    Each series is scored on its final horizon block, with the context
    taken immediately before it and the in-sample scale from everything
    before the forecast window.
    """
    H = ds.forecast_horizon
    C = ds.context_length
    per_series = {}
    wanted = set(ids) if ids is not None else None
    for ts in ds.test:
        if wanted is not None and ts.id not in wanted:
            continue
        v = np.asarray(ts.values, dtype=np.float64)
        if len(v) < C + H:
            continue   # not enough context for the model; skip, noted in report counts
        insample = v[:-H]
        context = insample[-C:]
        actual = v[-H:]
        errs = mase(actual, model.forecast(context), insample, ts.seasonal_period)
        per_series[ts.id] = errs
    if not per_series:
        raise ValidationError("no evaluable test series (all shorter than context + horizon)")
    return per_series


def run_experiment(
    ds: Dataset,
    sel: RegionSelector,
    cfg: JumpAugmentConfig,
    net: DenseNetConfig,
    stl: StlConfig = StlConfig(),
    fit_on: str = "all",
) -> dict:
    """Train on original / augmented / combined data and compare regions.

    Returns a JSON-ready report with one row per training regime, each
    carrying Mean/Median/Std MASE over the selected region and over the
    full test set. Deterministic given the seeds in cfg and net.
    """
    feats = dataset_features(ds, stl)
    space = fit_pca(feats, fit_on=fit_on)
    region_ids = select_region(space, sel, split="test")
    if not region_ids:
        raise ValidationError("selector matches no test series")

    aug = jump_augment(ds, cfg)
    combined = Dataset(
        name=ds.name + "+aug",
        train=ds.train + aug.train,
        test=ds.test,
        forecast_horizon=ds.forecast_horizon,
        context_length=ds.context_length,
    )

    regimes = [
        ("Original", ds),
        ("Transformed", aug),
        ("Orig+Trans", combined),
    ]
    rows = []
    for label, train_ds in regimes:
        model = train_dense(train_ds, net)
        full = _evaluate(model, ds)
        region = {sid: full[sid] for sid in region_ids if sid in full}
        if not region:
            raise ValidationError("selected region contains no evaluable test series")
        full_summary = summarize(list(full.values()))
        region_summary = summarize(list(region.values()))
        rows.append(
            {
                "train_data": label,
                "region": {
                    "mean": region_summary.mean,
                    "median": region_summary.median,
                    "std": region_summary.std,
                },
                "full": {
                    "mean": full_summary.mean,
                    "median": full_summary.median,
                    "std": full_summary.std,
                },
                "n_region": len(region),
                "n_full": len(full),
            }
        )

    aug_feats = dataset_features(aug, stl)
    aug_points = {
        sid: project(space, fv) for sid, _, fv in aug_feats if sid.endswith("-aug")
    }
    return {
        "dataset": ds.name,
        "metric": "mase",
        "aggregation": AGGREGATION_NOTE,
        "selector": {"axis": sel.axis, "threshold": sel.threshold, "direction": sel.direction},
        "region_ids": region_ids,
        "augment": {
            "split_low": cfg.split_low,
            "split_high": cfg.split_high,
            "factor_low": cfg.factor_low,
            "factor_high": cfg.factor_high,
            "seed": cfg.seed,
        },
        "net_seed": net.seed,
        "rows": rows,
        "space": space.to_json_obj(),
        "augmented_points": {
            sid: {"c0": c0, "c1": c1} for sid, (c0, c1) in aug_points.items()
        },
    }


def make_jump_fixture(
    n_train: int = 50,
    n_test_normal: int = 12,
    n_test_jump: int = 13,
    T_train: int = 480,
    T_test: int = 192,
    seasonal_period: int = 24,
    horizon: int = 24,
    context: int = 96,
    seed: int = 7,
    jump_cfg: JumpAugmentConfig | None = None,
    synth: SynthConfig | None = None,
) -> Dataset:
    """Synthetic stand-in for the level-jump robustness scenario.

    Train series are smooth trend+seasonal signals; the test split mixes
    normal series with a subset given deterministic level jumps (drawn
    from jump_cfg ranges) that land inside the final context window.
    Train series are long enough that jump-free windows dominate training
    even after augmentation, while jumped series of either length project
    far from the normal cluster along the same instance-space direction.
    """
    if synth is None:
        synth = SynthConfig(
            level_range=(20.0, 60.0),
            slope_range=(-0.01, 0.01),
            amplitude_range=(4.0, 8.0),
            noise_range=(0.2, 0.5),
        )
    if jump_cfg is None:
        jump_cfg = JumpAugmentConfig(seed=seed + 1)
    base = synthesize_dataset(
        n_series=n_train,
        T=T_train,
        seasonal_period=seasonal_period,
        seed=seed,
        n_test=n_test_normal + n_test_jump,
        T_test=T_test,
        horizon=horizon,
        context=context,
        config=synth,
        name="jump-fixture",
    )
    rng = np.random.default_rng(jump_cfg.seed)
    test = list(base.test)
    for idx in range(n_test_normal, n_test_normal + n_test_jump):
        ts = test[idx]
        split = int(rng.integers(jump_cfg.split_low, jump_cfg.split_high + 1))
        factor = float(rng.uniform(jump_cfg.factor_low, jump_cfg.factor_high))
        values = np.asarray(ts.values, dtype=np.float64).copy()
        values[split - 1:] *= factor
        test[idx] = ts.with_values(values, id_suffix="-jump")
    return Dataset(
        name=base.name,
        train=base.train,
        test=tuple(test),
        forecast_horizon=horizon,
        context_length=context,
    )
