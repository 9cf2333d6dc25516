"""Two-dimensional PCA embedding of the four-feature vectors.

Features are standardized (zero mean, unit sample variance; constant
features map to 0) before the 4x4 covariance eigendecomposition. The top
two eigenvectors form the basis; each basis row is sign-fixed so its
largest-magnitude loading is positive, making the embedding deterministic
across eigensolvers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .features import FeatureVector

DISPLAY_POINT_CAP = 25_600


@dataclass(frozen=True)
class InstanceSpace:
    """Fitted standardization + projection with every input point embedded.

    points maps series id -> (component0, component1, split tag).
    """

    means: np.ndarray            # (4,)
    stds: np.ndarray             # (4,) 0 marks a constant feature
    basis: np.ndarray            # (2, 4), rows orthonormal
    explained_variance: np.ndarray   # (2,) top-2 eigenvalues, descending
    points: dict

    def __post_init__(self):
        for name in ("means", "stds", "basis", "explained_variance"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def to_json_obj(self) -> dict:
        return {
            "means": self.means.tolist(),
            "stds": self.stds.tolist(),
            "basis": self.basis.tolist(),
            "explained_variance": self.explained_variance.tolist(),
            "points": {
                sid: {"c0": c0, "c1": c1, "split": split}
                for sid, (c0, c1, split) in self.points.items()
            },
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "InstanceSpace":
        points = {
            sid: (float(p["c0"]), float(p["c1"]), str(p["split"]))
            for sid, p in obj["points"].items()
        }
        return cls(
            means=np.array(obj["means"], dtype=np.float64),
            stds=np.array(obj["stds"], dtype=np.float64),
            basis=np.array(obj["basis"], dtype=np.float64),
            explained_variance=np.array(obj["explained_variance"], dtype=np.float64),
            points=points,
        )


def _standardize(X: np.ndarray, means: np.ndarray, stds: np.ndarray) -> np.ndarray:
    safe = np.where(stds > 0.0, stds, 1.0)
    Z = (X - means) / safe
    Z[:, stds == 0.0] = 0.0
    return Z


def fit_pca(
    features: list[tuple[str, str, FeatureVector]],
    fit_on: str = "all",
) -> InstanceSpace:
    """Fit the instance space and project every input point.

    ``features`` is a list of (id, split, FeatureVector). ``fit_on``
    selects which splits determine the standardization and basis ("all"
    or "train"); every point is projected regardless.
    """
    if fit_on not in ("all", "train"):
        raise ValidationError(f"fit_on must be 'all' or 'train', got {fit_on!r}")
    if len(features) < 3:
        raise ValidationError("need at least 3 feature vectors to fit the instance space")
    X_all = np.stack([fv.as_array() for _, _, fv in features])
    if fit_on == "train":
        mask = np.array([split == "train" for _, split, _ in features])
        if mask.sum() < 3:
            raise ValidationError("need at least 3 train feature vectors for train-only fit")
        X_fit = X_all[mask]
    else:
        X_fit = X_all

    means = X_fit.mean(axis=0)
    stds = X_fit.std(axis=0, ddof=1)
    stds = np.where(stds > 1e-12 * (1.0 + np.abs(means)), stds, 0.0)
    if np.all(stds == 0.0):
        raise ValidationError("degenerate feature matrix: all feature vectors identical")

    Z = _standardize(X_fit, means, stds)
    cov = Z.T @ Z / (len(Z) - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    basis = eigvecs[:, order[:2]].T.copy()   # (2, 4)
    for row in basis:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0

    proj = _standardize(X_all, means, stds) @ basis.T
    points = {
        sid: (float(proj[i, 0]), float(proj[i, 1]), split)
        for i, (sid, split, _) in enumerate(features)
    }
    return InstanceSpace(
        means=means,
        stds=stds,
        basis=basis,
        explained_variance=eigvals[:2],
        points=points,
    )


def project(space: InstanceSpace, fv: FeatureVector) -> tuple[float, float]:
    """Embed one feature vector: ((fv - means) / stds) @ basis.T."""
    z = _standardize(fv.as_array()[None, :], space.means, space.stds)
    c = z @ space.basis.T
    return float(c[0, 0]), float(c[0, 1])


def subsample_points(space: InstanceSpace, cap: int = DISPLAY_POINT_CAP, seed: int = 0) -> dict:
    """Seeded display subset of at most ``cap`` points (all when under cap)."""
    ids = sorted(space.points)
    if len(ids) <= cap:
        return dict(space.points)
    rng = np.random.default_rng(seed)
    keep = rng.choice(len(ids), size=cap, replace=False)
    return {ids[i]: space.points[ids[i]] for i in sorted(keep)}


def histogram(space: InstanceSpace, axis: int = 0, bins: int = 20) -> list:
    """Equal-width histogram of one component, counted per split.

    Returns a list of (lo, hi, {split: count}) covering the observed range.
    """
    if axis not in (0, 1):
        raise ValidationError(f"axis must be 0 or 1, got {axis}")
    if bins < 1:
        raise ValidationError("bins must be >= 1")
    if not space.points:
        return []
    values = np.array([p[axis] for p in space.points.values()])
    splits = [p[2] for p in space.points.values()]
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    edges = np.linspace(lo, hi, bins + 1)
    split_names = sorted(set(splits))
    out = []
    counts = {
        name: np.histogram(values[np.array(splits) == name], bins=edges)[0]
        for name in split_names
    }
    for b in range(bins):
        out.append(
            (
                float(edges[b]),
                float(edges[b + 1]),
                {name: int(counts[name][b]) for name in split_names},
            )
        )
    return out
