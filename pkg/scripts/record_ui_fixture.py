#!/usr/bin/env python3
"""Record the API fixture the frontend contract tests replay.

Spins the workbench app in-process against a small deterministic dataset
and captures the exact responses for every request the workbench issues
during the scripted scenarios (selection, level jump, invalid interval).

Usage: python3 scripts/record_ui_fixture.py [out_path]
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from tsprobe import DenseNetConfig, train_dense
from tsprobe.augmentation import make_jump_fixture
from tsprobe.service import build_app, build_session

SELECTED_ID = "test-0000"   # a normal (no-jump) series in the centre of the cloud
LEVEL_JUMP_STEPS = [
    {"kind": "translate", "params": {"c": 60}, "interval": [96, 192]},
]
INVALID_STEPS = [
    {"kind": "translate", "params": {"c": 1}, "interval": [50, 10000]},
]


def build_client() -> TestClient:
    ds = make_jump_fixture(
        n_train=8, n_test_normal=3, n_test_jump=4, T_train=480, T_test=192, seed=7
    )
    net = DenseNetConfig(
        input=96, hidden=(16, 16), output=24, batch_size=64, epochs=3,
        batches_per_epoch=5, early_stopping_patience=2, validation_windows=2,
        seed=0, optimizer="adam", learning_rate=1e-3,
    )
    model = train_dense(ds, net)
    return TestClient(build_app(build_session(ds, model)))


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent
        / "frontend" / "tests" / "fixtures" / "api-fixture.json"
    )
    client = build_client()
    exchanges = []

    def record(method, path, body=None):
        if method == "GET":
            resp = client.get(path)
        else:
            resp = client.post(path, json=body)
        exchanges.append(
            {
                "method": method,
                "path": path,
                "body": body,
                "status": resp.status_code,
                "response": resp.json(),
            }
        )
        return resp

    record("GET", "/dataset/meta")
    record("GET", "/instance-space")
    record("GET", "/errors/summary?metric=mase")
    record("GET", f"/features/{SELECTED_ID}")
    select = record("POST", "/select", {"id": SELECTED_ID})
    jump = record("POST", "/transform", {"steps": LEVEL_JUMP_STEPS})
    record("POST", "/transform", {"steps": INVALID_STEPS})

    # the committed fixture must exhibit the scenario the tests assert
    orig_c0 = select.json()["point"]["c0"]
    new_c0 = jump.json()["point"]["c0"]
    assert new_c0 > orig_c0, (
        f"level jump must move component 0 right: {orig_c0} -> {new_c0}"
    )

    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"exchanges": exchanges}, indent=2) + "\n")
    print(f"recorded {len(exchanges)} exchanges to {out}")
    print(f"level jump moves c0 {orig_c0:.3f} -> {new_c0:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
