import csv
import json
from pathlib import Path

import numpy as np
import pytest

from tsprobe.cli import main


def run(argv):
    return main([str(a) for a in argv])


@pytest.fixture
def synth_file(tmp_path):
    out = tmp_path / "ds.jsonl"
    code = run(
        ["synth", "--n", 4, "--T", 360, "--sp", 24, "--seed", 7,
         "--n-test", 2, "--horizon", 24, "--context", 96, "--out", out]
    )
    assert code == 0
    return out


class TestExitCodes:
    def test_missing_input_exits_2_and_names_path(self, tmp_path, capsys):
        code = run(["features", "--input", tmp_path / "missing.jsonl",
                    "--out", tmp_path / "f.csv"])
        assert code == 2
        assert "missing.jsonl" in capsys.readouterr().err

    def test_unknown_verb_exits_1(self, capsys):
        assert run(["frobnicate"]) == 1

    def test_no_verb_exits_1(self):
        assert run([]) == 1

    def test_help_exits_0(self):
        assert run(["--help"]) == 0

    def test_every_verb_has_help(self):
        for verb in ("synth", "decompose", "features", "pca", "transform",
                     "train", "evaluate", "experiment", "serve"):
            assert run([verb, "--help"]) == 0

    def test_validation_error_exits_1(self, synth_file, tmp_path, capsys):
        code = run(["decompose", "--input", synth_file, "--id", "nonexistent",
                    "--out", tmp_path / "d.json"])
        assert code == 1


class TestSynth:
    def test_byte_identical_for_fixed_seed(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for out in (a, b):
            assert run(["synth", "--n", 10, "--T", 96, "--sp", 24, "--seed", 7,
                        "--out", out]) == 0
        assert a.read_bytes().replace(b"a.jsonl", b"") == b.read_bytes().replace(b"b.jsonl", b"")

    def test_seed_changes_output(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(["synth", "--n", 2, "--T", 96, "--seed", 1, "--out", a])
        run(["synth", "--n", 2, "--T", 96, "--seed", 2, "--out", b])
        assert a.read_text() != b.read_text()


class TestDecompose:
    def test_components_sum_to_series(self, synth_file, tmp_path):
        out = tmp_path / "decomp.json"
        assert run(["decompose", "--input", synth_file, "--id", "train-0000",
                    "--out", out, "--no-figures"]) == 0
        obj = json.loads(out.read_text())
        total = np.array(obj["trend"]) + np.array(obj["seasonal"]) + np.array(obj["remainder"])
        raw = [json.loads(line) for line in synth_file.read_text().splitlines()]
        target = next(r["target"] for r in raw if r["id"] == "train-0000")
        np.testing.assert_allclose(total, target, rtol=1e-12)

    def test_figure_written(self, synth_file, tmp_path):
        out = tmp_path / "decomp.json"
        assert run(["decompose", "--input", synth_file, "--id", "train-0001",
                    "--out", out]) == 0
        assert (tmp_path / "decomp-components.png").exists()


class TestFeatures:
    def test_csv_columns_and_rows(self, synth_file, tmp_path):
        out = tmp_path / "features.csv"
        assert run(["features", "--input", synth_file, "--out", out]) == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0]) == {"id", "split", "F1", "F2", "F3", "F4"}
        assert len(rows) == 6
        for row in rows:
            for k in ("F1", "F2", "F3"):
                assert 0.0 <= float(row[k]) <= 1.0


class TestPcaVerb:
    def test_space_and_points_outputs(self, synth_file, tmp_path):
        feats = tmp_path / "features.csv"
        run(["features", "--input", synth_file, "--out", feats])
        out = tmp_path / "space.json"
        assert run(["pca", "--features", feats, "--out", out]) == 0
        obj = json.loads(out.read_text())
        assert set(obj) == {"means", "stds", "basis", "explained_variance", "points"}
        assert (tmp_path / "space.csv").exists()
        assert (tmp_path / "space-scatter.png").exists()


class TestTransformVerb:
    def test_identity_pipeline_round_trips_values(self, synth_file, tmp_path):
        pipeline = tmp_path / "p.json"
        pipeline.write_text(json.dumps([{"kind": "seasonal", "params": {"k": 1.0}}]))
        out = tmp_path / "gen.jsonl"
        assert run(["transform", "--input", synth_file, "--pipeline", pipeline,
                    "--out", out]) == 0
        orig = [json.loads(line) for line in synth_file.read_text().splitlines()]
        gen = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(gen) == len(orig)
        for o, g in zip(orig, gen):
            assert o["id"] == g["id"]
            assert o["target"] == g["target"]

    def test_single_id_and_real_transform(self, synth_file, tmp_path):
        pipeline = tmp_path / "p.json"
        pipeline.write_text(
            json.dumps([{"kind": "translate", "params": {"c": 10.0}, "interval": [1, 24]}])
        )
        out = tmp_path / "gen.jsonl"
        assert run(["transform", "--input", synth_file, "--pipeline", pipeline,
                    "--id", "train-0000", "--out", out]) == 0
        gen = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(gen) == 1 and gen[0]["id"] == "train-0000"


class TestTrainEvaluate:
    def net_config(self, tmp_path):
        cfg = tmp_path / "net.json"
        cfg.write_text(json.dumps({
            "input": 96, "hidden": [16, 16], "output": 24, "batch_size": 64,
            "epochs": 2, "batches_per_epoch": 5, "early_stopping_patience": 2,
            "validation_windows": 1, "seed": 0, "optimizer": "adam",
            "learning_rate": 0.001,
        }))
        return cfg

    def test_train_then_evaluate(self, synth_file, tmp_path):
        model = tmp_path / "model.json"
        assert run(["train", "--dataset", synth_file, "--config",
                    self.net_config(tmp_path), "--out", model]) == 0
        assert model.exists()

        errors = tmp_path / "errors.json"
        assert run(["evaluate", "--dataset", synth_file, "--model", model,
                    "--metric", "mase", "--out", errors]) == 0
        obj = json.loads(errors.read_text())
        assert obj["metric"] == "mase"
        assert len(obj["per_series"]) == 2
        assert (tmp_path / "errors.csv").exists()
        assert (tmp_path / "errors-horizon.png").exists()

    def test_train_seed_override_changes_model(self, synth_file, tmp_path):
        m1, m2 = tmp_path / "m1.json", tmp_path / "m2.json"
        cfg = self.net_config(tmp_path)
        run(["train", "--dataset", synth_file, "--config", cfg, "--out", m1])
        run(["train", "--dataset", synth_file, "--config", cfg, "--seed", 99, "--out", m2])
        assert json.loads(m1.read_text())["layers"] != json.loads(m2.read_text())["layers"]


class TestSmokePipeline:
    def test_synth_train_evaluate_experiment(self, tmp_path):
        """End-to-end: synth -> train -> evaluate -> experiment."""
        ds = tmp_path / "ds.jsonl"
        assert run(["synth", "--n", 6, "--T", 360, "--sp", 24, "--seed", 3,
                    "--n-test", 3, "--T-test", 192, "--horizon", 24,
                    "--context", 96, "--out", ds]) == 0

        net = tmp_path / "net.json"
        net.write_text(json.dumps({
            "input": 96, "hidden": [16], "output": 24, "batch_size": 64,
            "epochs": 2, "batches_per_epoch": 5, "early_stopping_patience": 2,
            "validation_windows": 1, "seed": 0, "optimizer": "adam",
            "learning_rate": 0.001,
        }))
        model = tmp_path / "model.json"
        assert run(["train", "--dataset", ds, "--config", net, "--out", model]) == 0

        errors = tmp_path / "errors.json"
        assert run(["evaluate", "--dataset", ds, "--model", model, "--out", errors]) == 0

        aug = tmp_path / "aug.json"
        aug.write_text(json.dumps({"split_low": 72, "split_high": 144,
                                   "factor_low": 2.0, "factor_high": 5.0, "seed": 1}))
        report = tmp_path / "report.json"
        code = run(["experiment", "--dataset", ds,
                    "--selector", '{"axis":0,"threshold":-1e9,"direction":"greater"}',
                    "--augment", aug, "--net", net, "--out", report])
        assert code == 0
        obj = json.loads(report.read_text())
        assert [r["train_data"] for r in obj["rows"]] == ["Original", "Transformed", "Orig+Trans"]

        with open(tmp_path / "report.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["train_data", "Mean", "Median", "Std"]
        assert [r[0] for r in rows[1:]] == ["Original", "Transformed", "Orig+Trans"]
        assert (tmp_path / "report-instance-space.png").exists()
        assert (tmp_path / "report-region-errors.png").exists()
