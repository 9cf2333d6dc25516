"""tsprobe command line: batch entry points over the library.

Verbs: synth, decompose, features, pca, transform, train, evaluate,
experiment, serve. Report-producing verbs write matplotlib figures next
to their delimited/JSON outputs unless --no-figures is given. Exit codes:
0 success, 1 validation/config error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .augmentation import JumpAugmentConfig, RegionSelector, dataset_features, run_experiment
from .decomposition import StlConfig, stl_decompose
from .exceptions import ValidationError
from .features import FEATURE_NAMES, FeatureVector
from .forecasting import DenseNetConfig, load_model, save_model, train_dense
from .instance_space import InstanceSpace, fit_pca
from .metrics import compute_errors, summarize
from .series import SynthConfig, load_jsonl, save_jsonl, synthesize_dataset
from .transforms import apply_pipeline, parse_pipeline


def _read_json(path):
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"file not found: {p}")
    return json.loads(p.read_text())


def _write_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _stl_config(args) -> StlConfig:
    seasonal_window = getattr(args, "seasonal_window", "periodic")
    if seasonal_window != "periodic":
        seasonal_window = int(seasonal_window)
    return StlConfig(seasonal_window=seasonal_window)


def _figure_path(out_path, name: str) -> Path:
    out = Path(out_path)
    return out.parent / f"{out.stem}-{name}.png"


def cmd_synth(args) -> int:
    cfg = SynthConfig()
    ds = synthesize_dataset(
        n_series=args.n,
        T=args.T,
        seasonal_period=args.sp,
        seed=args.seed,
        n_test=args.n_test,
        T_test=args.T_test,
        horizon=args.horizon,
        context=args.context,
        config=cfg,
        name=Path(args.out).stem,
    )
    save_jsonl(ds, args.out)
    print(f"wrote {len(ds.train)} train / {len(ds.test)} test series to {args.out}")
    return 0


def _get_series(ds, sid):
    try:
        return ds.get(sid)
    except KeyError:
        raise ValidationError(f"series {sid!r} not found in dataset {ds.name!r}")


def cmd_decompose(args) -> int:
    ds = load_jsonl(args.input, horizon=1, context=1, seasonal_period=args.sp)
    ts, _split = _get_series(ds, args.id)
    d = stl_decompose(ts, _stl_config(args))
    _write_json(
        {
            "id": ts.id,
            "seasonal_period": d.seasonal_period,
            "trend": d.trend.tolist(),
            "seasonal": d.seasonal.tolist(),
            "remainder": d.remainder.tolist(),
        },
        args.out,
    )
    if args.figures:
        from .plotting import save_decomposition_figure

        fig = _figure_path(args.out, "components")
        save_decomposition_figure(ts.values, d, fig, title=ts.id)
        print(f"wrote {args.out} and {fig}")
    else:
        print(f"wrote {args.out}")
    return 0


def cmd_features(args) -> int:
    ds = load_jsonl(args.input, horizon=1, context=1, seasonal_period=args.sp)
    stl = _stl_config(args)
    rows = dataset_features(ds, stl)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "split", "F1", "F2", "F3", "F4"])
        for sid, split, fv in rows:
            writer.writerow(
                [sid, split, fv.trend_strength, fv.seasonal_strength,
                 fv.trend_linearity, fv.trend_slope]
            )
    print(f"wrote features for {len(rows)} series to {args.out}")
    return 0


def _read_features_csv(path):
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"file not found: {p}")
    out = []
    with open(p, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"id", "split", "F1", "F2", "F3", "F4"}
        if reader.fieldnames is None or required - set(reader.fieldnames):
            raise ValidationError(f"{p}: expected columns id,split,F1,F2,F3,F4")
        for row in reader:
            fv = FeatureVector(
                trend_strength=float(row["F1"]),
                seasonal_strength=float(row["F2"]),
                trend_linearity=float(row["F3"]),
                trend_slope=float(row["F4"]),
            )
            out.append((row["id"], row["split"], fv))
    return out


def cmd_pca(args) -> int:
    feats = _read_features_csv(args.features)
    space = fit_pca(feats, fit_on=args.fit_on)
    _write_json(space.to_json_obj(), args.out)
    points_csv = Path(args.out).with_suffix(".csv")
    with open(points_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "split", "c0", "c1"])
        for sid, (c0, c1, split) in space.points.items():
            writer.writerow([sid, split, c0, c1])
    written = [str(args.out), str(points_csv)]
    if args.figures:
        from .plotting import save_instance_space_figure

        fig = _figure_path(args.out, "scatter")
        save_instance_space_figure(space, fig)
        written.append(str(fig))
    print("wrote " + ", ".join(written))
    return 0


def cmd_transform(args) -> int:
    ds = load_jsonl(args.input, horizon=1, context=1, seasonal_period=args.sp)
    steps = parse_pipeline(_read_json(args.pipeline))
    if args.seed is not None:
        steps = tuple(
            type(step)(kind=step.kind, params=step.params, interval=step.interval,
                       seed=args.seed + i)
            for i, step in enumerate(steps)
        )
    stl = _stl_config(args)
    targets = list(ds.iter_with_split())
    if args.id is not None:
        ts, split = _get_series(ds, args.id)
        targets = [(ts, split)]
    with open(args.out, "w", encoding="utf-8") as fh:
        for ts, split in targets:
            result = apply_pipeline(ts, steps, stl)
            rec = result.to_series(id_suffix="").to_record(split=split)
            fh.write(json.dumps(rec) + "\n")
    print(f"wrote {len(targets)} transformed series to {args.out}")
    return 0


def cmd_train(args) -> int:
    cfg_obj = _read_json(args.config) if args.config else {}
    if args.seed is not None:
        cfg_obj = {**cfg_obj, "seed": args.seed}
    cfg = DenseNetConfig.from_json_obj(cfg_obj)
    ds = load_jsonl(
        args.dataset, horizon=cfg.output, context=cfg.input, seasonal_period=args.sp
    )
    model = train_dense(ds, cfg)
    save_model(model, args.out)
    best = min(model.history) if model.history else float("nan")
    print(f"trained {len(model.history)} epochs, best val loss {best:.6f}; wrote {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    ds = load_jsonl(
        args.dataset, horizon=model.horizon, context=model.context_length,
        seasonal_period=args.sp,
    )
    per_series = {}
    skipped = []
    for ts in ds.test:
        v = np.asarray(ts.values, dtype=np.float64)
        if len(v) < model.context_length + model.horizon:
            skipped.append(ts.id)
            continue
        insample = v[:-model.horizon]
        forecast = model.forecast(insample[-model.context_length:])
        per_series[ts.id] = compute_errors(
            args.metric, v[-model.horizon:], forecast, insample, ts.seasonal_period
        )
    if not per_series:
        raise ValidationError("no evaluable test series in dataset")
    summary = summarize(list(per_series.values()))
    _write_json(
        {
            "metric": args.metric,
            "summary": summary.to_json_obj(),
            "skipped": skipped,
            "per_series": {
                sid: {"aggregate": e.aggregate, "per_horizon": e.per_horizon.tolist()}
                for sid, e in per_series.items()
            },
        },
        args.out,
    )
    errors_csv = Path(args.out).with_suffix(".csv")
    with open(errors_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", args.metric])
        for sid, e in per_series.items():
            writer.writerow([sid, e.aggregate])
    written = [str(args.out), str(errors_csv)]
    if args.figures:
        from .plotting import save_error_curve_figure

        fig = _figure_path(args.out, "horizon")
        save_error_curve_figure(summary, fig, metric=args.metric)
        written.append(str(fig))
    print("wrote " + ", ".join(written))
    return 0


def cmd_experiment(args) -> int:
    sel = RegionSelector.from_json_obj(json.loads(args.selector))
    aug_obj = _read_json(args.augment) if args.augment else {}
    cfg = JumpAugmentConfig(**aug_obj)
    net_obj = _read_json(args.net) if args.net else {}
    net = DenseNetConfig.from_json_obj(net_obj)
    if args.seed is not None:
        cfg = JumpAugmentConfig(**{**aug_obj, "seed": args.seed})
        net = DenseNetConfig.from_json_obj({**net_obj, "seed": args.seed})
    ds = load_jsonl(
        args.dataset, horizon=net.output, context=net.input, seasonal_period=args.sp
    )
    report = run_experiment(ds, sel, cfg, net, stl=_stl_config(args))
    _write_json(report, args.out)

    report_csv = Path(args.out).with_suffix(".csv")
    with open(report_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["train_data", "Mean", "Median", "Std"])
        for row in report["rows"]:
            writer.writerow(
                [row["train_data"], row["region"]["mean"], row["region"]["median"],
                 row["region"]["std"]]
            )
    written = [str(args.out), str(report_csv)]
    if args.figures:
        from .plotting import save_experiment_figure, save_instance_space_figure

        space = InstanceSpace.from_json_obj(report["space"])
        fig1 = _figure_path(args.out, "instance-space")
        save_instance_space_figure(
            space, fig1,
            extra_points=report["augmented_points"],
            region_threshold=report["selector"]["threshold"],
            region_axis=report["selector"]["axis"],
            title="instance space with generated data",
        )
        fig2 = _figure_path(args.out, "region-errors")
        save_experiment_figure(report, fig2)
        written.extend([str(fig1), str(fig2)])
    print("wrote " + ", ".join(written))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app, build_session

    model = load_model(args.model)
    ds = load_jsonl(
        args.dataset, horizon=model.horizon, context=model.context_length,
        seasonal_period=args.sp,
    )
    space = None
    if args.space:
        space = InstanceSpace.from_json_obj(_read_json(args.space))
    session = build_session(
        ds, model, space=space, stl=_stl_config(args), display_seed=args.seed
    )
    app = build_app(session)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_stl_flags(p):
    p.add_argument("--seasonal-window", default="periodic",
                   help="STL seasonal window: 'periodic' or an odd integer >= 3")


def _add_figure_flags(p):
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip the matplotlib figure outputs")
    p.set_defaults(figures=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsprobe",
        description="decomposition-based time series generation and "
                    "forecasting-robustness workbench",
    )
    sub = parser.add_subparsers(dest="command", metavar="verb")

    p = sub.add_parser("synth", help="generate a synthetic JSONL dataset")
    p.add_argument("--n", type=int, required=True, help="number of train series")
    p.add_argument("--T", type=int, required=True, help="train series length")
    p.add_argument("--sp", type=int, default=24, help="seasonal period")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-test", type=int, default=0)
    p.add_argument("--T-test", type=int, default=None)
    p.add_argument("--horizon", type=int, default=24)
    p.add_argument("--context", type=int, default=168)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("decompose", help="STL-decompose one series to JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--id", required=True)
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--out", required=True)
    _add_stl_flags(p)
    _add_figure_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("features", help="compute per-series features to CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--out", required=True)
    _add_stl_flags(p)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("pca", help="fit the 2-d instance space from a features CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--fit-on", choices=("all", "train"), default="all")
    p.add_argument("--out", required=True)
    _add_figure_flags(p)
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("transform", help="apply a transformation pipeline to series")
    p.add_argument("--input", required=True)
    p.add_argument("--pipeline", required=True, help="pipeline JSON file")
    p.add_argument("--id", default=None, help="transform only this series")
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--seed", type=int, default=None,
                   help="override noise step seeds (step i gets seed+i)")
    p.add_argument("--out", required=True)
    _add_stl_flags(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("train", help="train the dense forecaster")
    p.add_argument("--dataset", required=True)
    p.add_argument("--config", default=None, help="net config JSON file")
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a model on the test split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--metric", choices=("mase", "mae", "smape"), default="mase")
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--out", required=True)
    _add_figure_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("experiment", help="run the jump-augmentation retraining experiment")
    p.add_argument("--dataset", required=True)
    p.add_argument("--selector", required=True,
                   help='region selector JSON, e.g. \'{"axis":0,"threshold":4,"direction":"greater"}\'')
    p.add_argument("--augment", default=None, help="jump augment config JSON file")
    p.add_argument("--net", default=None, help="net config JSON file")
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--seed", type=int, default=None,
                   help="override both augment and net seeds")
    p.add_argument("--out", required=True)
    _add_stl_flags(p)
    _add_figure_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("serve", help="serve the workbench HTTP API")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--space", default=None, help="instance space JSON (fit at startup if absent)")
    p.add_argument("--sp", type=int, default=24)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("TSPROBE_PORT", "8080")),
                   help="listen port (defaults to $TSPROBE_PORT or 8080)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the display-cap point subsample")
    _add_stl_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; our contract reserves 2 for I/O
        return 0 if exc.code == 0 else 1
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except (FileNotFoundError, NotADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
