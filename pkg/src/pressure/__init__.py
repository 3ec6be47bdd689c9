"""Topological pressure, equilibrium measures, the partition-function oracle and block recoding."""

from ..symbolic.models import LocallyConstantPotential
from .equilibrium import equilibrium_measure, metric_pressure
from .models import OracleRow, PerronData, PressureReport, RecodedSystem, VariationalSweep
from .recoding import block_recode
from .transfer import (
    is_primitive,
    log_partition_function_oracle,
    oracle_table,
    partition_function_oracle,
    perron_data,
    topological_entropy,
    topological_pressure,
    transfer_matrix,
)
from .variational import variational_sweep

__all__ = [
    "LocallyConstantPotential",
    "OracleRow",
    "PerronData",
    "PressureReport",
    "RecodedSystem",
    "VariationalSweep",
    "block_recode",
    "equilibrium_measure",
    "is_primitive",
    "log_partition_function_oracle",
    "metric_pressure",
    "oracle_table",
    "partition_function_oracle",
    "perron_data",
    "topological_entropy",
    "topological_pressure",
    "transfer_matrix",
    "variational_sweep",
]
