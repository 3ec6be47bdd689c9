"""Tests for the locpress command line and its reports."""

import csv
import json
import math
from pathlib import Path

import pytest

from src.cli import ExperimentConfig, cmd_local_pressure, cmd_pressure, load_config, results_payload
from src.cli.main import EXIT_CONFIG, EXIT_OK, EXIT_PRECONDITION, main
from src.config import settings
from src.errors import ConfigError

CONFIGS = Path(__file__).parent / "configs"

FULL2 = {"alphabet_size": 2, "transition": [[1, 1], [1, 1]], "name": "full-2-shift"}


def write_config(tmp_path: Path, **sections) -> Path:
    config = {
        "name": "test",
        "system": FULL2,
        "potential": {"range": 1, "table": [0.0, 1.0]},
        "measure": {"kind": "equilibrium"},
        "estimator": {"n_grid": [10, 20], "k": 1, "sample_count": 15, "capacity": 21, "seed": 3},
    }
    config.update(sections)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


def run_cli(*args: str) -> int:
    return main([*args, "--quiet"])


@pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_configs_are_valid(path):
    config = load_config(path)
    assert config.name == path.stem


def test_pressure_report(tmp_path):
    out = tmp_path / "report.json"
    assert run_cli("pressure", "--config", str(write_config(tmp_path)), "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["command"] == "pressure"
    assert report["config"]["name"] == "test"
    results = report["results"]
    assert results["kind"] == "pressure"
    assert results["report"]["value"] == pytest.approx(math.log(1 + math.e), abs=1e-12)
    assert results["topological_entropy"] == pytest.approx(math.log(2), abs=1e-12)
    assert [row["n"] for row in results["oracle"]] == [4, 8, 12, 16]
    assert results["oracle_skipped"] == []


def test_pressure_report_lists_oracle_rows_over_budget(tmp_path):
    system = {"alphabet_size": 3, "transition": [[1, 1, 1]] * 3}
    path = write_config(tmp_path, system=system, potential={"range": 1, "table": [0.0, 0.5, -0.3]})
    envelope = cmd_pressure(load_config(path))
    assert [row.n for row in envelope.results.oracle] == [4, 8, 12]
    assert envelope.results.oracle_skipped == [16]
    assert envelope.results.oracle_gaps_decreasing


def test_shipped_full3_config_stays_within_oracle_budget():
    envelope = cmd_pressure(load_config(CONFIGS / "full3_range1_equilibrium.json"))
    assert envelope.results.oracle_skipped == []
    assert [row.n for row in envelope.results.oracle] == [4, 8, 12]


def test_report_goes_to_stdout_without_out(tmp_path, capsys):
    assert run_cli("pressure", "--config", str(write_config(tmp_path))) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["kind"] == "pressure"


def test_summary_is_printed_to_stderr(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["pressure", "--config", str(write_config(tmp_path)), "--out", str(out)]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "P_top" in captured.err


def test_equilibrium_on_recoded_system(tmp_path):
    out = tmp_path / "report.json"
    config = CONFIGS / "full2_range3_equilibrium.json"
    assert run_cli("equilibrium", "--config", str(config), "--out", str(out)) == EXIT_OK
    results = json.loads(out.read_text())["results"]
    assert results["blocks"] == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert results["pressure"]["recoded"]
    assert abs(results["gap"]) <= 1e-10
    assert results["axioms"]["max_length"] == 10


def test_local_pressure_csv(tmp_path):
    out, table = tmp_path / "report.json", tmp_path / "values.csv"
    config = write_config(tmp_path)
    assert run_cli("local-pressure", "--config", str(config), "--out", str(out), "--csv", str(table)) == EXIT_OK
    with table.open(newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["point_id", "n", "k", "value"]
    assert len(rows) == 1 + 15 * 2
    assert {(row[1], row[2]) for row in rows[1:]} == {("10", "1"), ("20", "1")}

    report = json.loads(out.read_text())["results"]["report"]
    assert report["n"] == 20 and report["k"] == 1
    assert float(rows[-1][3]) == report["per_point"][-1]["values"][-1]


def test_gibbs_check_rejects_biased_coin(tmp_path):
    out = tmp_path / "report.json"
    config = CONFIGS / "bernoulli09_vs_zero.json"
    assert run_cli("gibbs-check", "--config", str(config), "--out", str(out)) == EXIT_OK
    results = json.loads(out.read_text())["results"]
    assert results["diagnostics"]["verdict"] == "rejected"
    assert results["verdict"] is None
    expected = math.log(2) + 0.9 * math.log(0.9) + 0.1 * math.log(0.1)
    assert results["direct_gap"] == pytest.approx(expected, abs=1e-10)


def test_gibbs_check_accepts_equilibrium(tmp_path):
    out = tmp_path / "report.json"
    assert run_cli("gibbs-check", "--config", str(write_config(tmp_path)), "--out", str(out)) == EXIT_OK
    results = json.loads(out.read_text())["results"]
    assert results["diagnostics"]["verdict"] == "gibbs"
    assert results["verdict"]["is_equilibrium"]


@pytest.mark.parametrize("n_grid", [[100], [20, 20]], ids=["single", "repeated"])
def test_gibbs_check_needs_two_distinct_n(tmp_path, n_grid):
    estimator = {"n_grid": n_grid, "k": 1, "sample_count": 5, "capacity": 101, "seed": 3}
    path = write_config(tmp_path, estimator=estimator)
    assert run_cli("gibbs-check", "--config", str(path)) == EXIT_CONFIG
    # a single n is still enough for local pressure
    assert run_cli("local-pressure", "--config", str(path), "--out", str(tmp_path / "r.json")) == EXIT_OK


def test_threads_do_not_change_results(tmp_path):
    config = load_config(write_config(tmp_path))
    assert results_payload(cmd_local_pressure(config, threads=1)) == results_payload(
        cmd_local_pressure(config, threads=3)
    )


def test_seed_override(tmp_path):
    path = write_config(tmp_path)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli("local-pressure", "--config", str(path), "--out", str(first)) == EXIT_OK
    assert run_cli("local-pressure", "--config", str(path), "--out", str(second), "--seed", "4") == EXIT_OK
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert b["config"]["estimator"]["seed"] == 4
    assert a["results"] != b["results"]


def test_missing_config_file(tmp_path):
    assert run_cli("pressure", "--config", str(tmp_path / "missing.json")) == EXIT_CONFIG


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert run_cli("pressure", "--config", str(path)) == EXIT_CONFIG


def test_capacity_too_small(tmp_path):
    estimator = {"n_grid": [10, 20], "k": 2, "capacity": 21}
    assert run_cli("local-pressure", "--config", str(write_config(tmp_path, estimator=estimator))) == EXIT_CONFIG


def test_unknown_measure_kind(tmp_path):
    path = write_config(tmp_path, measure={"kind": "uniform"})
    assert run_cli("local-pressure", "--config", str(path)) == EXIT_CONFIG


def test_potential_table_size_mismatch(tmp_path):
    path = write_config(tmp_path, potential={"range": 2, "table": [0.0, 1.0, 2.0]})
    assert run_cli("pressure", "--config", str(path)) == EXIT_CONFIG


def test_seed_needs_estimator(tmp_path):
    path = write_config(tmp_path, estimator=None)
    assert run_cli("pressure", "--config", str(path), "--seed", "1") == EXIT_CONFIG


def test_reducible_system_is_a_precondition_failure(tmp_path):
    system = {"alphabet_size": 2, "transition": [[1, 0], [0, 1]]}
    assert run_cli("pressure", "--config", str(write_config(tmp_path, system=system))) == EXIT_PRECONDITION


def test_atomic_measure_is_a_precondition_failure(tmp_path):
    path = write_config(tmp_path, measure={"kind": "bernoulli", "probabilities": [1.0, 0.0]})
    assert run_cli("local-pressure", "--config", str(path)) == EXIT_PRECONDITION


def test_commands_need_their_sections(tmp_path):
    path = write_config(tmp_path, measure=None)
    assert run_cli("gibbs-check", "--config", str(path)) == EXIT_CONFIG
    with pytest.raises(ConfigError):
        cmd_local_pressure(ExperimentConfig.model_validate(json.loads(path.read_text())))


def test_recorded_runs_can_be_listed_and_shown(tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(settings, "database_url", f"sqlite:///{tmp_path / 'runs.db'}")
    path = write_config(tmp_path)
    assert run_cli("pressure", "--config", str(path), "--out", str(tmp_path / "r.json"), "--record") == EXIT_OK
    assert run_cli("history", "--show", "1") == EXIT_OK
    shown = json.loads(capsys.readouterr().out)
    assert shown["command"] == "pressure"
    assert shown == json.loads((tmp_path / "r.json").read_text())
    assert run_cli("history", "--show", "2") == EXIT_CONFIG
