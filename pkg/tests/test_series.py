import gzip
import json

import numpy as np
import pytest

from tsprobe import (
    Dataset,
    ParseError,
    SynthConfig,
    TimeSeries,
    ValidationError,
    compute_features,
    load_jsonl,
    save_jsonl,
    stl_decompose,
    synthesize_dataset,
)

from conftest import make_series


class TestTimeSeries:
    def test_rejects_nan(self):
        with pytest.raises(ValidationError, match="NaN"):
            make_series([1.0, np.nan, 3.0])

    def test_rejects_inf(self):
        with pytest.raises(ValidationError):
            make_series([1.0, np.inf])

    def test_rejects_short_period(self):
        with pytest.raises(ValidationError, match="seasonal_period"):
            make_series([1.0, 2.0], sp=1)

    def test_values_read_only(self):
        ts = make_series([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            ts.values[0] = 9.0


class TestDataset:
    def test_duplicate_id_rejected(self):
        a = make_series([1, 2, 3], sid="a")
        with pytest.raises(ValidationError, match="duplicate id"):
            Dataset(name="d", train=(a, a), test=(), forecast_horizon=1, context_length=1)

    def test_test_series_must_exceed_horizon(self):
        a = make_series([1, 2, 3], sid="a")
        with pytest.raises(ValidationError, match="horizon"):
            Dataset(name="d", train=(), test=(a,), forecast_horizon=3, context_length=1)


class TestLoadJsonl:
    def write(self, tmp_path, lines, name="ds.jsonl"):
        p = tmp_path / name
        p.write_text("\n".join(lines) + "\n")
        return p

    def test_direct_field_mapping(self, tmp_path):
        p = self.write(
            tmp_path,
            ['{"id":"a","start":"2020-01-01T00:00:00","freq":"1H","target":[1,2,3]}'],
        )
        ds = load_jsonl(p, horizon=1, context=1, seasonal_period=24)
        assert len(ds.train) == 1 and len(ds.test) == 0
        ts = ds.train[0]
        assert ts.id == "a" and ts.start == "2020-01-01T00:00:00" and ts.freq == "1H"
        assert len(ts) == 3
        np.testing.assert_array_equal(ts.values, [1.0, 2.0, 3.0])

    def test_duplicate_id_error(self, tmp_path):
        line = '{"id":"a","start":"2020","freq":"1H","target":[1,2]}'
        p = self.write(tmp_path, [line, line])
        with pytest.raises(ValidationError, match="duplicate id"):
            load_jsonl(p, horizon=1, context=1)

    def test_null_target_value(self, tmp_path):
        p = self.write(tmp_path, ['{"id":"a","start":"2020","freq":"1H","target":[1,null,3]}'])
        with pytest.raises(ValidationError, match="'a'"):
            load_jsonl(p, horizon=1, context=1)

    def test_malformed_line_names_line_number(self, tmp_path):
        p = self.write(
            tmp_path,
            ['{"id":"a","start":"2020","freq":"1H","target":[1]}', "{not json"],
        )
        with pytest.raises(ParseError, match="line 2"):
            load_jsonl(p, horizon=1, context=1)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="missing.jsonl"):
            load_jsonl(tmp_path / "missing.jsonl", horizon=1, context=1)

    def test_split_key_routes_to_test(self, tmp_path):
        p = self.write(
            tmp_path,
            [
                '{"id":"a","start":"2020","freq":"1H","target":[1,2]}',
                '{"id":"b","start":"2020","freq":"1H","target":[1,2,3],"split":"test"}',
            ],
        )
        ds = load_jsonl(p, horizon=1, context=1)
        assert [t.id for t in ds.train] == ["a"]
        assert [t.id for t in ds.test] == ["b"]

    def test_round_trip_preserves_values(self, tmp_path):
        rng = np.random.default_rng(0)
        ds = synthesize_dataset(3, 96, seed=5, n_test=2, horizon=8, context=24)
        p = tmp_path / "rt.jsonl"
        save_jsonl(ds, p)
        back = load_jsonl(p, horizon=8, context=24)
        for a, b in zip(ds.train + ds.test, back.train + back.test):
            assert a.id == b.id
            np.testing.assert_array_equal(a.values, b.values)

    def test_gzip_round_trip(self, tmp_path):
        ds = synthesize_dataset(2, 96, seed=1, horizon=8, context=24)
        p = tmp_path / "ds.jsonl.gz"
        save_jsonl(ds, p)
        with gzip.open(p, "rt") as fh:
            assert json.loads(fh.readline())["id"] == "train-0000"
        back = load_jsonl(p, horizon=8, context=24)
        np.testing.assert_array_equal(back.train[0].values, ds.train[0].values)


class TestSynthesize:
    def test_deterministic(self):
        a = synthesize_dataset(1, 96, seasonal_period=24, seed=0)
        b = synthesize_dataset(1, 96, seasonal_period=24, seed=0)
        np.testing.assert_array_equal(a.train[0].values, b.train[0].values)

    def test_too_short_rejected(self):
        with pytest.raises(ValidationError, match="too short"):
            synthesize_dataset(1, 71, seasonal_period=24, seed=0)

    def test_no_seasonality_gives_low_seasonal_strength(self):
        cfg = SynthConfig(amplitude_range=(0.0, 0.0), noise_range=(0.5, 0.5))
        ds = synthesize_dataset(3, 192, seed=2, config=cfg)
        for ts in ds.train:
            fv = compute_features(stl_decompose(ts))
            assert fv.seasonal_strength < 0.2

    def test_pure_seasonal_gives_high_seasonal_strength(self):
        cfg = SynthConfig(
            slope_range=(0.0, 0.0),
            amplitude_range=(3.0, 8.0),
            noise_range=(1e-6, 1e-6),
        )
        ds = synthesize_dataset(3, 192, seed=3, config=cfg)
        for ts in ds.train:
            fv = compute_features(stl_decompose(ts))
            assert fv.seasonal_strength > 0.9
