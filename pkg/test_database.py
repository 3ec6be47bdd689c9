"""Tests for the run history store."""

import pytest

from src.cli import ExperimentConfig, cmd_local_pressure, cmd_pressure
from src.database import Database

CONFIG = ExperimentConfig.model_validate(
    {
        "name": "history",
        "system": {"alphabet_size": 2, "transition": [[1, 1], [1, 0]], "name": "golden-mean"},
        "potential": {"range": 2, "table": [0.1, -0.2, 0.4]},
        "measure": {"kind": "equilibrium"},
        "estimator": {"n_grid": [10, 20], "k": 1, "k_values": [0], "sample_count": 10, "capacity": 22, "seed": 5},
    }
)


@pytest.fixture
def db(tmp_path):
    return Database(f"sqlite:///{tmp_path / 'nested' / 'runs.db'}")


def test_round_trip(db):
    envelope = cmd_local_pressure(CONFIG)
    run_id = db.save_run(envelope)
    restored = db.get_run(run_id)
    assert restored is not None
    assert restored.model_dump_json() == envelope.model_dump_json()


def test_missing_run(db):
    assert db.get_run(42) is None
    assert db.get_config(42) is None


def test_list_runs_newest_first_with_filter(db):
    first = db.save_run(cmd_pressure(CONFIG))
    second = db.save_run(cmd_local_pressure(CONFIG))
    third = db.save_run(cmd_pressure(CONFIG))

    assert [run.id for run in db.list_runs()] == [third, second, first]
    assert [run.id for run in db.list_runs(command="pressure")] == [third, first]
    assert [run.id for run in db.list_runs(limit=1)] == [third]

    run = db.list_runs(command="local-pressure")[0]
    assert run.config_name == "history"
    assert run.seed == 5


def test_stored_config_can_be_rerun(db):
    run_id = db.save_run(cmd_pressure(CONFIG))
    config = db.get_config(run_id)
    assert config == CONFIG
    assert cmd_pressure(config).results == cmd_pressure(CONFIG).results


def test_run_without_estimator_has_no_seed(db):
    config = CONFIG.model_copy(update={"estimator": None})
    run_id = db.save_run(cmd_pressure(config))
    assert db.list_runs()[0].id == run_id
    assert db.list_runs()[0].seed is None
