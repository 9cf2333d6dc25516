"""HTTP workbench API over a single loaded session.

The session holds one dataset, one fitted instance space and one
forecasting model (normally produced by the CLI) plus the current
selection and a cache of the last transform. Reads never mutate the
session; select/transform go through a single writer lock. Endpoints:

    GET  /dataset/meta      dataset geometry and sizes
    GET  /instance-space    embedded points + basis + histogram payload
    GET  /series/{id}       raw values and metadata of one series
    POST /select            {"id": ...} -> series, forecast, errors, features
    POST /transform         {"steps": [...]} -> transformed panels payload
    GET  /errors/summary    across-test error summary (?metric=mase|mae|smape)
    GET  /features/{id}     feature values + embedded position of one series
    POST /train             optional: retrain the dense model, streaming progress
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse

from .decomposition import StlConfig, stl_decompose
from .exceptions import ValidationError
from .features import compute_features
from .forecasting import DenseNetConfig, train_dense
from .instance_space import InstanceSpace, fit_pca, histogram, project, subsample_points
from .metrics import METRIC_NAMES, compute_errors, summarize
from .series import Dataset
from .transforms import apply_pipeline, parse_pipeline

DISPLAY_SEED = 0


@dataclass
class Session:
    """Workbench state shared across requests.

    A fresh session may hold nothing; endpoints answer 409 until a
    dataset/model/space are loaded.
    """

    dataset: Dataset | None = None
    space: InstanceSpace | None = None
    model: object | None = None
    stl: StlConfig = field(default_factory=StlConfig)
    display_seed: int = DISPLAY_SEED
    selected_id: str | None = None
    _transform_cache: tuple | None = None   # ((id, steps, metric), payload)
    _summaries: dict = field(default_factory=dict)
    _per_series: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def errors_summary(self, metric: str) -> dict:
        if metric not in METRIC_NAMES:
            raise ValidationError(f"unknown metric {metric!r}")
        if metric not in self._summaries:
            per_series = {}
            for ts in self.dataset.test:
                try:
                    errs = self._score_series(ts.values, metric)
                except ValidationError:
                    continue
                per_series[ts.id] = errs
            if not per_series:
                raise ValidationError("no evaluable test series")
            self._per_series[metric] = per_series
            self._summaries[metric] = summarize(list(per_series.values()))
        return {
            "metric": metric,
            **self._summaries[metric].to_json_obj(),
        }

    def series_errors(self, sid: str, metric: str = "mase"):
        self.errors_summary(metric)
        return self._per_series[metric].get(sid)

    def _score_series(self, values, metric: str):
        v = np.asarray(values, dtype=np.float64)
        H = self.dataset.forecast_horizon
        C = self.dataset.context_length
        if len(v) < C + H:
            raise ValidationError("series shorter than context + horizon")
        insample = v[:-H]
        forecast = self.model.forecast(insample[-C:])
        return compute_errors(metric, v[-H:], forecast, insample, self.dataset.seasonal_period)


def _series_payload(ts, split: str) -> dict:
    return {
        "id": ts.id,
        "split": split,
        "start": ts.start,
        "freq": ts.freq,
        "seasonal_period": ts.seasonal_period,
        "values": [float(v) for v in ts.values],
    }


def _errors_payload(errs, metric: str) -> dict | None:
    if errs is None:
        return None
    return {
        "metric": metric,
        "per_horizon": errs.per_horizon.tolist(),
        "aggregate": errs.aggregate,
    }


def build_app(session: Session) -> FastAPI:
    app = FastAPI(title="tsprobe workbench API")

    def require_loaded():
        if session.dataset is None or session.space is None or session.model is None:
            raise HTTPException(status_code=409, detail="no dataset loaded")

    def selection_payload(sid: str, metric: str = "mase") -> dict:
        ts, split = session.dataset.get(sid)
        fv = compute_features(stl_decompose(ts, session.stl))
        point = session.space.points.get(sid)
        if point is None:
            c0, c1 = project(session.space, fv)
        else:
            c0, c1 = point[0], point[1]
        v = np.asarray(ts.values, dtype=np.float64)
        H = session.dataset.forecast_horizon
        C = session.dataset.context_length
        forecast = None
        errors = None
        if len(v) >= C + H:
            insample = v[:-H]
            forecast = session.model.forecast(insample[-C:]).tolist()
            try:
                errors = _errors_payload(
                    compute_errors(metric, v[-H:], np.asarray(forecast), insample,
                                   ts.seasonal_period),
                    metric,
                )
            except ValidationError:
                errors = None
        return {
            "id": sid,
            "series": _series_payload(ts, split),
            "forecast": forecast,
            "errors": errors,
            "features": fv.to_dict(),
            "point": {"c0": c0, "c1": c1},
        }

    @app.get("/dataset/meta")
    def dataset_meta():
        require_loaded()
        ds = session.dataset
        return {
            "name": ds.name,
            "n_train": len(ds.train),
            "n_test": len(ds.test),
            "horizon": ds.forecast_horizon,
            "context_length": ds.context_length,
            "seasonal_period": ds.seasonal_period,
        }

    @app.get("/instance-space")
    def instance_space(axis: int = 0, bins: int = 20):
        require_loaded()
        shown = subsample_points(session.space, seed=session.display_seed)
        try:
            hist = histogram(session.space, axis=axis, bins=bins)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "points": [
                {"id": sid, "c0": c0, "c1": c1, "split": split}
                for sid, (c0, c1, split) in shown.items()
            ],
            "basis": session.space.basis.tolist(),
            "explained_variance": session.space.explained_variance.tolist(),
            "capped": len(shown) < len(session.space.points),
            "histogram": {
                "axis": axis,
                "bins": [
                    {"lo": lo, "hi": hi, "counts": counts} for lo, hi, counts in hist
                ],
            },
        }

    @app.get("/series/{sid}")
    def get_series(sid: str):
        require_loaded()
        try:
            ts, split = session.dataset.get(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown series {sid!r}")
        return _series_payload(ts, split)

    @app.get("/features/{sid}")
    def get_features(sid: str):
        require_loaded()
        try:
            ts, split = session.dataset.get(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown series {sid!r}")
        fv = compute_features(stl_decompose(ts, session.stl))
        point = session.space.points.get(sid)
        c0, c1 = (point[0], point[1]) if point else project(session.space, fv)
        return {"id": sid, "split": split, **fv.to_dict(), "point": {"c0": c0, "c1": c1}}

    @app.post("/select")
    def select(body: dict):
        require_loaded()
        sid = body.get("id")
        if not sid:
            raise HTTPException(status_code=400, detail="body must carry an 'id'")
        try:
            session.dataset.get(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown series {sid!r}")
        metric = body.get("metric", "mase")
        with session.lock:
            session.selected_id = sid
            session._transform_cache = None
        return selection_payload(sid, metric)

    @app.post("/transform")
    def transform(body: dict):
        require_loaded()
        if session.selected_id is None:
            raise HTTPException(status_code=409, detail="no series selected")
        steps_json = body.get("steps")
        if steps_json is None:
            raise HTTPException(status_code=400, detail="body must carry 'steps'")
        metric = body.get("metric", "mase")
        key = (session.selected_id, json.dumps(steps_json, sort_keys=True), metric)
        with session.lock:
            if session._transform_cache and session._transform_cache[0] == key:
                return session._transform_cache[1]
        try:
            steps = parse_pipeline(steps_json)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sid = session.selected_id
        ts, split = session.dataset.get(sid)
        try:
            result = apply_pipeline(ts, steps, session.stl)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

        new_series = result.to_series(id_suffix="")
        fv = compute_features(stl_decompose(new_series, session.stl))
        c0, c1 = project(session.space, fv)
        orig = session.space.points.get(sid)
        if orig is None:
            orig_fv = compute_features(stl_decompose(ts, session.stl))
            oc0, oc1 = project(session.space, orig_fv)
        else:
            oc0, oc1 = orig[0], orig[1]

        v = result.transformed_values
        H = session.dataset.forecast_horizon
        C = session.dataset.context_length
        forecast = None
        errors = None
        if len(v) >= C + H:
            insample = v[:-H]
            forecast = session.model.forecast(insample[-C:]).tolist()
            try:
                errors = _errors_payload(
                    compute_errors(metric, v[-H:], np.asarray(forecast), insample,
                                   ts.seasonal_period),
                    metric,
                )
            except ValidationError:
                errors = None
        payload = {
            "id": sid,
            "transformed": v.tolist(),
            "forecast": forecast,
            "errors": errors,
            "features": fv.to_dict(),
            "point": {"c0": c0, "c1": c1},
            "original_point": {"c0": oc0, "c1": oc1},
        }
        with session.lock:
            session._transform_cache = (key, payload)
        return payload

    @app.get("/errors/summary")
    def errors_summary(metric: str = "mase"):
        require_loaded()
        try:
            return session.errors_summary(metric)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/train")
    def train(body: dict):
        require_loaded()
        cfg_obj = body.get("config", {})
        try:
            cfg = DenseNetConfig.from_json_obj(cfg_obj)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

        def progress():
            yield f"training dense net: {cfg.epochs} epochs\n"
            with session.lock:
                model = train_dense(session.dataset, cfg)
                session.model = model
                session._summaries.clear()
                session._per_series.clear()
                session._transform_cache = None
            for epoch, vloss in enumerate(model.history, start=1):
                yield f"epoch {epoch}: val_loss={vloss:.6f}\n"
            yield "done\n"

        return StreamingResponse(progress(), media_type="text/plain")

    return app


def build_session(
    dataset: Dataset,
    model,
    space: InstanceSpace | None = None,
    stl: StlConfig = StlConfig(),
    display_seed: int = DISPLAY_SEED,
) -> Session:
    """Assemble a session, fitting the instance space if none is supplied."""
    if space is None:
        feats = [
            (ts.id, split, compute_features(stl_decompose(ts, stl)))
            for ts, split in dataset.iter_with_split()
        ]
        space = fit_pca(feats)
    return Session(
        dataset=dataset, space=space, model=model, stl=stl, display_seed=display_seed
    )
