"""Forecasting models: seasonal-naive baseline and a dense feed-forward net.

The dense net (default 168 -> 100 -> 100 -> 24, ReLU hidden layers) is
trained on randomly sampled (context, target) windows. Each window is
standardized by its own context mean/std, the net predicts standardized
targets under an MAE loss, and predictions are de-standardized on the way
out. The last ``validation_windows`` non-overlapping horizon blocks of
every series are reserved for early stopping; training windows never
overlap the reserved region. Series too short for a full window are
skipped (no padding).

Everything is numpy; training is deterministic for a fixed seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, ValidationError
from .series import Dataset


@dataclass(frozen=True)
class DenseNetConfig:
    input: int = 168                 # context length, neurons in the input layer
    hidden: tuple[int, ...] = (100, 100)
    output: int = 24                 # forecast horizon
    batch_size: int = 512
    epochs: int = 100
    batches_per_epoch: int = 50
    early_stopping_patience: int = 10
    validation_windows: int = 7      # last n non-overlapping windows per series
    seed: int = 0
    scaler: str = "standard"         # per-window context mean/std
    optimizer: str = "sgd"           # "sgd" or "adam"
    learning_rate: float = 0.05      # 1e-3 is a better default for adam
    grad_clip: float = 5.0           # global gradient norm cap, 0 disables

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(int(h) for h in self.hidden))
        for name in ("input", "output", "batch_size", "epochs", "batches_per_epoch",
                     "early_stopping_patience"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be positive")
        if any(h < 1 for h in self.hidden):
            raise ConfigError("hidden layer sizes must be positive")
        if self.validation_windows < 1:
            raise ConfigError("validation_windows must be >= 1")
        if self.scaler != "standard":
            raise ConfigError(f"unknown scaler {self.scaler!r}")
        if self.optimizer not in ("sgd", "adam"):
            raise ConfigError(f"unknown optimizer {self.optimizer!r}")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DenseNetConfig":
        known = {f for f in cls.__dataclass_fields__}  # noqa: B035 - set of names
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown net config keys: {sorted(unknown)}")
        return cls(**obj)


class SeasonalNaive:
    """Repeat the last observed seasonal cycle."""

    def __init__(self, sp: int, horizon: int, context_length: int):
        if sp < 1:
            raise ValidationError("sp must be >= 1")
        if context_length < sp:
            raise ValidationError(f"context_length {context_length} shorter than sp {sp}")
        self.sp = int(sp)
        self.horizon = int(horizon)
        self.context_length = int(context_length)

    def forecast(self, context) -> np.ndarray:
        context = np.asarray(context, dtype=np.float64)
        if len(context) < self.sp:
            raise ValidationError(
                f"context length {len(context)} shorter than seasonal period {self.sp}"
            )
        h = np.arange(self.horizon)
        return context[len(context) - self.sp + (h % self.sp)]


def seasonal_naive(context, sp: int, horizon: int) -> np.ndarray:
    """Functional form: forecast[h] = context[-sp + (h mod sp)]."""
    context = np.asarray(context, dtype=np.float64)
    return SeasonalNaive(sp, horizon, context_length=max(sp, len(context))).forecast(context)


def _init_params(cfg: DenseNetConfig, rng: np.random.Generator) -> list[tuple[np.ndarray, np.ndarray]]:
    sizes = (cfg.input, *cfg.hidden, cfg.output)
    params = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        # He init for the ReLU stack; final linear layer gets the same treatment
        W = rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        b = np.zeros(fan_out)
        params.append((W, b))
    return params


def _forward(params, X: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
    """Return predictions and the per-layer activations (for backprop)."""
    activations = [X]
    a = X
    for li, (W, b) in enumerate(params):
        z = a @ W + b
        a = np.maximum(z, 0.0) if li < len(params) - 1 else z
        activations.append(a)
    return a, activations


def loss_and_grads(params, X: np.ndarray, Y: np.ndarray):
    """MAE loss on standardized targets and its analytic gradients."""
    pred, acts = _forward(params, X)
    diff = pred - Y
    loss = float(np.abs(diff).mean())
    delta = np.sign(diff) / diff.size
    grads = []
    for li in range(len(params) - 1, -1, -1):
        W, _ = params[li]
        a_prev = acts[li]
        grads.append((a_prev.T @ delta, delta.sum(axis=0)))
        if li > 0:
            delta = (delta @ W.T) * (acts[li] > 0.0)
    grads.reverse()
    return loss, grads


def _clip_grads(grads, max_norm: float):
    if max_norm <= 0:
        return grads
    total = np.sqrt(sum(float((g ** 2).sum()) + float((gb ** 2).sum()) for g, gb in grads))
    if total <= max_norm:
        return grads
    scale = max_norm / total
    return [(g * scale, gb * scale) for g, gb in grads]


class _Sgd:
    def __init__(self, lr: float):
        self.lr = lr

    def step(self, params, grads):
        for (W, b), (gW, gb) in zip(params, grads):
            W -= self.lr * gW
            b -= self.lr * gb


class _Adam:
    def __init__(self, lr: float, params, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.t = 0
        self.m = [(np.zeros_like(W), np.zeros_like(b)) for W, b in params]
        self.v = [(np.zeros_like(W), np.zeros_like(b)) for W, b in params]

    def step(self, params, grads):
        self.t += 1
        bc1 = 1.0 - self.beta1 ** self.t
        bc2 = 1.0 - self.beta2 ** self.t
        for i, ((W, b), (gW, gb)) in enumerate(zip(params, grads)):
            mW, mb = self.m[i]
            vW, vb = self.v[i]
            mW[:] = self.beta1 * mW + (1 - self.beta1) * gW
            mb[:] = self.beta1 * mb + (1 - self.beta1) * gb
            vW[:] = self.beta2 * vW + (1 - self.beta2) * gW ** 2
            vb[:] = self.beta2 * vb + (1 - self.beta2) * gb ** 2
            W -= self.lr * (mW / bc1) / (np.sqrt(vW / bc2) + self.eps)
            b -= self.lr * (mb / bc1) / (np.sqrt(vb / bc2) + self.eps)


def _standardize_windows(contexts: np.ndarray, targets: np.ndarray | None):
    mu = contexts.mean(axis=1, keepdims=True)
    sd = contexts.std(axis=1, keepdims=True)
    sd = np.where(sd < 1e-12, 1.0, sd)   # constant contexts must not NaN
    zc = (contexts - mu) / sd
    zt = (targets - mu) / sd if targets is not None else None
    return zc, zt, mu, sd


@dataclass
class _WindowIndex:
    """Flattened series storage with valid window starts and validation windows."""

    flat: np.ndarray             # all training series concatenated
    window_starts: np.ndarray    # flat index of each valid training window
    val_contexts: np.ndarray
    val_targets: np.ndarray


def _index_windows(train: tuple, C: int, H: int, n_val: int) -> _WindowIndex:
    series_values = [np.asarray(ts.values, dtype=np.float64) for ts in train]
    starts: list[int] = []
    val_ctx, val_tgt = [], []
    base = 0
    for v in series_values:
        T = len(v)
        reserved = n_val * H
        max_train_offset = T - C - H - reserved
        starts.extend(base + o for o in range(0, max_train_offset + 1))
        for k in range(1, n_val + 1):
            tgt_start = T - k * H
            ctx_start = tgt_start - C
            if ctx_start < 0:
                break
            val_ctx.append(v[ctx_start:tgt_start])
            val_tgt.append(v[tgt_start:tgt_start + H])
        base += T
    if not starts:
        raise ValidationError(
            "no valid training window in any series "
            f"(need length >= context + horizon * (1 + validation_windows) = {C + H * (1 + n_val)})"
        )
    if not val_ctx:
        raise ValidationError("no valid validation window in any series")
    return _WindowIndex(
        flat=np.concatenate(series_values),
        window_starts=np.array(starts, dtype=np.int64),
        val_contexts=np.stack(val_ctx),
        val_targets=np.stack(val_tgt),
    )


class DenseModel:
    """Trained feed-forward forecaster."""

    def __init__(self, cfg: DenseNetConfig, params, history: list[float] | None = None):
        self.cfg = cfg
        self.params = params
        self.history = history or []
        self.context_length = cfg.input
        self.horizon = cfg.output

    def forecast(self, context) -> np.ndarray:
        context = np.asarray(context, dtype=np.float64)
        if len(context) != self.context_length:
            raise ValidationError(
                f"context length {len(context)} != model context_length {self.context_length}"
            )
        zc, _, mu, sd = _standardize_windows(context[None, :], None)
        pred, _ = _forward(self.params, zc)
        out = pred * sd + mu
        return out[0]

    def to_json_obj(self) -> dict:
        return {
            "type": "dense",
            "config": {
                "input": self.cfg.input,
                "hidden": list(self.cfg.hidden),
                "output": self.cfg.output,
                "batch_size": self.cfg.batch_size,
                "epochs": self.cfg.epochs,
                "batches_per_epoch": self.cfg.batches_per_epoch,
                "early_stopping_patience": self.cfg.early_stopping_patience,
                "validation_windows": self.cfg.validation_windows,
                "seed": self.cfg.seed,
                "scaler": self.cfg.scaler,
                "optimizer": self.cfg.optimizer,
                "learning_rate": self.cfg.learning_rate,
                "grad_clip": self.cfg.grad_clip,
            },
            "layers": [
                {"shape": list(W.shape), "W": W.flatten().tolist(), "b": b.tolist()}
                for W, b in self.params
            ],
            "validation_history": self.history,
        }


def _val_loss(params, index: _WindowIndex) -> float:
    zc, zt, _, _ = _standardize_windows(index.val_contexts, index.val_targets)
    pred, _ = _forward(params, zc)
    return float(np.abs(pred - zt).mean())


def train_dense(train: Dataset | tuple, cfg: DenseNetConfig = DenseNetConfig()) -> DenseModel:
    """Train the dense net on a dataset's train split (or a series tuple).

    Deterministic for a fixed cfg.seed; early stopping restores the best
    validation parameters. ``history`` records the validation loss per
    epoch.
    """
    series = train.train if isinstance(train, Dataset) else tuple(train)
    if isinstance(train, Dataset) and train.forecast_horizon != cfg.output:
        raise ConfigError(
            f"net output {cfg.output} != dataset horizon {train.forecast_horizon}"
        )
    index = _index_windows(series, cfg.input, cfg.output, cfg.validation_windows)
    rng = np.random.default_rng(cfg.seed)
    params = _init_params(cfg, rng)
    opt = _Adam(cfg.learning_rate, params) if cfg.optimizer == "adam" else _Sgd(cfg.learning_rate)

    span = np.arange(cfg.input + cfg.output)
    best_loss = np.inf
    best_params = [(W.copy(), b.copy()) for W, b in params]
    since_best = 0
    history: list[float] = []

    for _epoch in range(cfg.epochs):
        for _batch in range(cfg.batches_per_epoch):
            picks = rng.integers(0, len(index.window_starts), size=cfg.batch_size)
            windows = index.flat[index.window_starts[picks][:, None] + span]
            ctx = windows[:, :cfg.input]
            tgt = windows[:, cfg.input:]
            zc, zt, _, _ = _standardize_windows(ctx, tgt)
            _, grads = loss_and_grads(params, zc, zt)
            grads = _clip_grads(grads, cfg.grad_clip)
            opt.step(params, grads)
        vloss = _val_loss(params, index)
        history.append(vloss)
        if vloss < best_loss:
            best_loss = vloss
            best_params = [(W.copy(), b.copy()) for W, b in params]
            since_best = 0
        else:
            since_best += 1
            if since_best >= cfg.early_stopping_patience:
                break

    return DenseModel(cfg, best_params, history)


def save_model(model, path) -> None:
    if isinstance(model, SeasonalNaive):
        obj = {
            "type": "seasonal_naive",
            "sp": model.sp,
            "horizon": model.horizon,
            "context_length": model.context_length,
        }
    elif isinstance(model, DenseModel):
        obj = model.to_json_obj()
    else:
        raise ValidationError(f"cannot serialize model of type {type(model).__name__}")
    Path(path).write_text(json.dumps(obj))


def load_model(path):
    obj = json.loads(Path(path).read_text())
    kind = obj.get("type")
    if kind == "seasonal_naive":
        return SeasonalNaive(obj["sp"], obj["horizon"], obj["context_length"])
    if kind == "dense":
        cfg = DenseNetConfig.from_json_obj(obj["config"])
        params = []
        for layer in obj["layers"]:
            shape = tuple(layer["shape"])
            W = np.array(layer["W"], dtype=np.float64).reshape(shape)
            b = np.array(layer["b"], dtype=np.float64)
            params.append((W, b))
        return DenseModel(cfg, params, obj.get("validation_history", []))
    raise ValidationError(f"unknown model type {kind!r} in {path}")
