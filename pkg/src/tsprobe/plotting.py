"""Report figures written next to the CLI's delimited outputs.

All functions render to a file path with the Agg backend; nothing here
opens a window. Colors follow the workbench convention: original series
and points in green, transformed in red, train/test scatter in
blue/orange.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .decomposition import Decomposition
from .instance_space import InstanceSpace
from .metrics import ErrorSummary

SPLIT_COLORS = {"train": "tab:blue", "test": "tab:orange"}


def save_decomposition_figure(values, decomp: Decomposition, path, title: str = "") -> None:
    """Four-row component plot: observed, trend, seasonal, remainder."""
    fig, axes = plt.subplots(4, 1, figsize=(9, 8), sharex=True)
    panels = [
        ("observed", np.asarray(values)),
        ("trend", decomp.trend),
        ("seasonal", decomp.seasonal),
        ("remainder", decomp.remainder),
    ]
    for ax, (label, y) in zip(axes, panels):
        ax.plot(y, linewidth=0.9)
        ax.set_ylabel(label)
    axes[0].set_title(title)
    axes[-1].set_xlabel("index")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_instance_space_figure(
    space: InstanceSpace,
    path,
    extra_points: dict | None = None,
    extra_label: str = "generated",
    region_threshold: float | None = None,
    region_axis: int = 0,
    title: str = "instance space",
) -> None:
    """Scatter of the embedded points per split, optionally with generated
    points (red) and a region boundary line."""
    fig, ax = plt.subplots(figsize=(7, 6))
    by_split: dict[str, list] = {}
    for c0, c1, split in space.points.values():
        by_split.setdefault(split, []).append((c0, c1))
    for split, pts in sorted(by_split.items()):
        arr = np.asarray(pts)
        ax.scatter(
            arr[:, 0], arr[:, 1], s=14, alpha=0.7,
            color=SPLIT_COLORS.get(split, "tab:gray"), label=split,
        )
    if extra_points:
        arr = np.asarray([(p["c0"], p["c1"]) if isinstance(p, dict) else p for p in extra_points.values()])
        ax.scatter(arr[:, 0], arr[:, 1], s=14, alpha=0.7, color="tab:red", label=extra_label)
    if region_threshold is not None:
        if region_axis == 0:
            ax.axvline(region_threshold, color="black", linestyle="--", linewidth=1)
        else:
            ax.axhline(region_threshold, color="black", linestyle="--", linewidth=1)
    ev = space.explained_variance
    total = ev.sum()
    share = ev / total if total > 0 else ev
    ax.set_xlabel(f"component 0 ({100 * share[0]:.0f}% of captured variance)")
    ax.set_ylabel(f"component 1 ({100 * share[1]:.0f}% of captured variance)")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_error_curve_figure(
    summary: ErrorSummary,
    path,
    series_curve=None,
    metric: str = "mase",
    title: str = "per-horizon error",
) -> None:
    """Mean error curve with the 25-75 percentile band; optionally one
    series' own curve in green on top."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    h = np.arange(1, len(summary.horizon_mean) + 1)
    ax.fill_between(h, summary.band_low, summary.band_high, alpha=0.3, color="tab:orange",
                    label="25-75% band")
    ax.plot(h, summary.horizon_mean, color="tab:orange", label="test mean")
    if series_curve is not None:
        ax.plot(h, np.asarray(series_curve), color="tab:green", label="selected series")
    ax.set_xlabel("horizon")
    ax.set_ylabel(metric)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_experiment_figure(report: dict, path) -> None:
    """Bar chart of region MASE summaries per training regime."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    labels = [row["train_data"] for row in report["rows"]]
    x = np.arange(len(labels))
    width = 0.35
    means = [row["region"]["mean"] for row in report["rows"]]
    medians = [row["region"]["median"] for row in report["rows"]]
    ax.bar(x - width / 2, means, width, label="mean", color="tab:blue")
    ax.bar(x + width / 2, medians, width, label="median", color="tab:green")
    ax.set_xticks(x)
    ax.set_xticklabels(labels)
    ax.set_ylabel("region MASE")
    ax.set_title(f"region errors by training data (n={report['rows'][0]['n_region']})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
