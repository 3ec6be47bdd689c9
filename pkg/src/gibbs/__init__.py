"""Weak-Gibbs diagnostics and equilibrium verdicts."""

from .corollary import metric_pressure_gap, verify_corollary_b
from .diagnostics import fit_tail_slope, gibbs_diagnose, gibbs_ratio, gibbs_sweep, log_gibbs_ratio
from .models import EquilibriumVerdict, GibbsDiagnostics, GibbsVerdict, PointGibbsTrace, SandwichEntry

__all__ = [
    "EquilibriumVerdict",
    "GibbsDiagnostics",
    "GibbsVerdict",
    "PointGibbsTrace",
    "SandwichEntry",
    "fit_tail_slope",
    "gibbs_diagnose",
    "gibbs_ratio",
    "gibbs_sweep",
    "log_gibbs_ratio",
    "metric_pressure_gap",
    "verify_corollary_b",
]
