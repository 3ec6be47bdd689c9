"""Equilibrium verdict for measures that pass the weak-Gibbs diagnostics."""

import logging
import math

import numpy as np

from ..config import settings
from ..errors import GibbsHypothesisError
from ..measures.models import MarkovMeasure, SampleBatch
from ..pressure.equilibrium import metric_pressure
from ..pressure.transfer import topological_pressure
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from .diagnostics import gibbs_diagnose
from .models import EquilibriumVerdict, GibbsDiagnostics, GibbsVerdict, SandwichEntry

logger = logging.getLogger(__name__)


def metric_pressure_gap(
    mu: MarkovMeasure, sft: SubshiftOfFiniteType, phi: LocallyConstantPotential
) -> tuple[float, float, float]:
    """(P_top, entropy + integral, P_top - (entropy + integral)) computed exactly."""
    if mu.sft != sft:
        raise ValueError("measure lives on a different system")
    p_top = topological_pressure(sft, phi).value
    metric = metric_pressure(mu, phi)
    return p_top, metric, p_top - metric


def verify_corollary_b(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    batch: SampleBatch,
    n_grid: list[int],
    k: int,
    eq_tol: float | None = None,
    diagnostics: GibbsDiagnostics | None = None,
    threads: int = 1,
) -> EquilibriumVerdict:
    """Decide whether a (weak-)Gibbs measure is an equilibrium state.

    Each traced (x, n) is checked against the bracket
    P_top - log delta_n / n <= P(x; n, k) <= P_top + log delta_n / n.

    Args:
        mu: Measure under test
        sft: System of mu
        phi: Potential
        batch: Points sampled from mu
        n_grid: n values for the diagnostics
        k: Radius exponent
        eq_tol: Tolerance on |P_top - entropy - integral| (default: settings)
        diagnostics: Result of gibbs_diagnose for the same inputs, if already computed
        threads: Worker threads for the diagnostics

    Returns:
        EquilibriumVerdict

    Raises:
        GibbsHypothesisError: If the diagnostics rejected the measure
    """
    eq_tol = settings.eq_tol if eq_tol is None else eq_tol
    p_top, metric, gap = metric_pressure_gap(mu, sft, phi)
    if diagnostics is None:
        diagnostics = gibbs_diagnose(mu, sft, phi, p_top, batch, n_grid, k, threads=threads)
    if diagnostics.verdict == GibbsVerdict.REJECTED:
        raise GibbsHypothesisError(
            f"Gibbs diagnostics rejected {mu.label!r} at k={diagnostics.k}: slope "
            f"{diagnostics.worst_slope:.4f} at point {diagnostics.worst_point} exceeds {diagnostics.slope_tol}"
        )

    sandwich = []
    for trace in diagnostics.per_point:
        for n, log_ratio, log_delta in zip(diagnostics.n_grid, trace.log_ratios, trace.log_deltas):
            sandwich.append(
                SandwichEntry(
                    point_id=trace.point_id,
                    n=n,
                    lower=p_top - log_delta / n,
                    middle=p_top - log_ratio / n,
                    upper=p_top + log_delta / n,
                )
            )

    n_max = diagnostics.n_grid[-1]
    finest = np.array([p_top - trace.log_ratios[-1] / n_max for trace in diagnostics.per_point])
    sampled_mean = float(np.mean(finest))
    sampled_tolerance = 3.0 * float(np.std(finest)) / math.sqrt(len(finest)) + 2.0 * (
        mu.log_scale + phi.max_abs
    ) / n_max

    verdict = EquilibriumVerdict(
        p_top=p_top,
        metric_pressure=metric,
        gap=gap,
        eq_tol=eq_tol,
        is_equilibrium=abs(gap) <= eq_tol,
        gibbs_verdict=diagnostics.verdict,
        k=diagnostics.k,
        sandwich_trace=sandwich,
        sampled_mean=sampled_mean,
        sampled_tolerance=sampled_tolerance,
        sampled_consistent=abs(sampled_mean - p_top) <= sampled_tolerance,
    )
    logger.info("equilibrium verdict for %s: gap %.3e, equilibrium=%s", mu.label, gap, verdict.is_equilibrium)
    return verdict
