"""
Tests for benchmark manifests and the concurrent runner.

Run with: pytest tests/test_bench.py -v
"""

import math
from pathlib import Path

import pandas as pd
import pytest

from src.bench import (
    CSV_COLUMNS,
    ManifestError,
    load_manifest,
    parse_manifest,
    run_entry,
    run_manifest,
    summarize_results,
)
from src.bench.manifest import BenchEntry, BenchManifest
from src.instance.models import InstanceFormat
from src.solver import solve
from src.solver.config import Setting
from tests.conftest import FIXTURES, REPO_ROOT


def _entry(name: str, p: int, setting: Setting = Setting.S1HSL, alpha: int = 2) -> BenchEntry:
    return BenchEntry(
        instance=FIXTURES / name,
        format=InstanceFormat.MATRIX,
        p=p,
        alpha=alpha,
        setting=setting,
        time_limit_s=60.0,
        seed=0,
    )


class TestParseManifest:
    def test_defaults_and_overrides(self):
        manifest = parse_manifest(
            "defaults: {format: matrix, alpha: 2, setting: '1H'}\n"
            "entries:\n"
            "  - {instance: a.yaml, p: 3}\n"
            "  - {instance: b.yaml, p: 4, alpha: 3, setting: '1HSL', seed: 7}\n",
            base_dir="/data",
        )
        first, second = manifest.entries
        assert first.instance == Path("/data/a.yaml")
        assert (first.format, first.alpha, first.setting) == (InstanceFormat.MATRIX, 2, Setting.S1H)
        assert first.time_limit_s == 1800.0
        assert (second.alpha, second.setting, second.seed) == (3, Setting.S1HSL, 7)
        assert second.label == "b/p=4/alpha=3/1HSL"

    def test_absolute_paths_kept(self):
        manifest = parse_manifest("entries:\n  - {instance: /x/att48.tsp, p: 10}\n", base_dir="/data")
        assert manifest.entries[0].instance == Path("/x/att48.tsp")
        assert manifest.entries[0].format is InstanceFormat.TSPLIB

    def test_empty_document(self):
        assert len(parse_manifest("")) == 0

    def test_invalid_yaml(self):
        with pytest.raises(ManifestError, match="invalid YAML"):
            parse_manifest("entries: [")

    def test_not_a_mapping(self):
        with pytest.raises(ManifestError, match="must be a YAML mapping"):
            parse_manifest("- a\n- b\n")

    def test_invalid_p(self):
        with pytest.raises(ManifestError, match="invalid manifest"):
            parse_manifest("entries:\n  - {instance: a.yaml, p: 0}\n")

    def test_unknown_setting(self):
        with pytest.raises(ManifestError, match="invalid manifest"):
            parse_manifest("entries:\n  - {instance: a.yaml, p: 2, setting: '2X'}\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ManifestError, match="cannot read manifest"):
            load_manifest(tmp_path / "missing.yaml")

    def test_shipped_examples(self):
        manifest = load_manifest(REPO_ROOT / "data" / "manifests" / "examples.yaml")
        assert len(manifest) == 5
        assert manifest.source.name == "examples.yaml"
        assert all(entry.instance.exists() for entry in manifest.entries)
        assert manifest.entries[-1].alpha == 3


class TestRunner:
    def test_run_entry(self):
        row = run_entry(_entry("example3.yaml", 2))
        assert list(row) == CSV_COLUMNS
        assert row["status"] == "Optimal"
        assert row["UB"] == row["LB"] == 2.0
        assert row["n"] == 3

    def test_run_entry_missing_instance(self, tmp_path):
        entry = BenchEntry(tmp_path / "gone.yaml", InstanceFormat.MATRIX, 2, 2, Setting.S1, 10.0, 0)
        row = run_entry(entry)
        assert row["status"] == "Error"
        assert math.isnan(row["UB"])

    def test_run_entry_bad_p(self):
        assert run_entry(_entry("example3.yaml", 3))["status"] == "Error"

    def test_run_entry_unexpected_failure(self, monkeypatch):
        def crash(*args, **kwargs):
            raise RuntimeError("singular basis")

        monkeypatch.setattr("src.bench.runner.solve", crash)
        row = run_entry(_entry("example3.yaml", 2))
        assert list(row) == CSV_COLUMNS
        assert row["status"] == "Error"
        assert math.isnan(row["UB"])

    async def test_run_manifest_survives_a_crashing_entry(self, monkeypatch, tmp_path):
        def flaky(inst, p, alpha, config=None):
            if config.setting is Setting.S1HS:
                raise ValueError("bad row")
            return solve(inst, p, alpha, config)

        monkeypatch.setattr("src.bench.runner.solve", flaky)
        manifest = BenchManifest(
            entries=(
                _entry("example1.yaml", 3, Setting.S1),
                _entry("example3.yaml", 2, Setting.S1HS),
                _entry("example3.yaml", 2, Setting.S1HSL),
            )
        )
        rows = await run_manifest(manifest, jobs=2, out=tmp_path / "results.csv")
        assert [r["status"] for r in rows] == ["Optimal", "Error", "Optimal"]
        assert len(pd.read_csv(tmp_path / "results.csv")) == 3

    async def test_run_manifest_keeps_order(self, tmp_path):
        manifest = BenchManifest(
            entries=(
                _entry("example1.yaml", 3, Setting.S1),
                _entry("example3.yaml", 2, Setting.S1HS),
                _entry("example1.yaml", 3, Setting.S1HSL),
            )
        )
        out = tmp_path / "out" / "results.csv"
        rows = await run_manifest(manifest, jobs=2, out=out)

        assert [r["setting"] for r in rows] == ["1", "1HS", "1HSL"]
        df = pd.read_csv(out)
        assert list(df.columns) == CSV_COLUMNS
        assert list(df["instance"]) == ["example1", "example3", "example1"]
        assert (df["status"] == "Optimal").all()
        assert df["UB"].tolist() == pytest.approx([2.0, 2.0, 2.0])

    async def test_empty_manifest_writes_header(self, tmp_path):
        out = tmp_path / "empty.csv"
        rows = await run_manifest(BenchManifest(entries=()), out=out)
        assert rows == []
        assert out.read_text().strip() == ",".join(CSV_COLUMNS)


class TestSummary:
    def test_per_setting(self):
        rows = [
            {"instance": "a", "setting": "1", "UB": 4.0, "LB": 4.0, "time_s": 1.0, "status": "Optimal"},
            {"instance": "b", "setting": "1", "UB": 4.0, "LB": 3.0, "time_s": 2.0, "status": "TimeLimit"},
            {"instance": "a", "setting": "1HSL", "UB": 4.0, "LB": 4.0, "time_s": 0.5, "status": "Optimal"},
        ]
        summary = summarize_results(rows).set_index("setting")
        assert summary.loc["1", "instances"] == 2
        assert summary.loc["1", "optimal"] == 1
        assert summary.loc["1", "mean_gap"] == pytest.approx(0.125)
        assert summary.loc["1", "max_gap"] == pytest.approx(0.25)
        assert summary.loc["1", "total_time_s"] == pytest.approx(3.0)
        assert summary.loc["1HSL", "mean_gap"] == 0.0

    def test_empty(self):
        assert summarize_results([]).empty
