"""Finite-scale local pressure and local entropy estimators and their batch verification."""

from .estimators import (
    decomposition_check,
    estimate_point,
    invariance_defect,
    local_entropy_at,
    local_pressure_at,
    make_grid,
    verify_theorem_a,
)
from .models import GridCell, LocalPressureEstimate, TheoremAReport, finest_cell

__all__ = [
    "GridCell",
    "LocalPressureEstimate",
    "TheoremAReport",
    "decomposition_check",
    "estimate_point",
    "finest_cell",
    "invariance_defect",
    "local_entropy_at",
    "local_pressure_at",
    "make_grid",
    "verify_theorem_a",
]
