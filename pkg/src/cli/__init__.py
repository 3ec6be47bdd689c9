"""Batch front-end: experiment configs, pipelines and reports."""

from .commands import (
    build_experiment,
    cmd_equilibrium,
    cmd_gibbs_check,
    cmd_local_pressure,
    cmd_pressure,
    load_config,
    results_payload,
    write_csv,
    write_report,
)
from .models import ExperimentConfig, ReportEnvelope
from .selftest import cmd_selftest

__all__ = [
    "ExperimentConfig",
    "ReportEnvelope",
    "build_experiment",
    "cmd_equilibrium",
    "cmd_gibbs_check",
    "cmd_local_pressure",
    "cmd_pressure",
    "cmd_selftest",
    "load_config",
    "results_payload",
    "write_csv",
    "write_report",
]
