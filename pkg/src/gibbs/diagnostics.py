"""Gibbs ratios and the weak-Gibbs slope test."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import stats

from ..config import settings
from ..errors import CapacityError, SupportError
from ..measures.markov import log_cylinder_measure
from ..measures.models import MarkovMeasure, SampleBatch
from ..symbolic.core import birkhoff_sum, dynamical_ball_cylinder
from ..symbolic.models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType
from .models import GibbsDiagnostics, GibbsVerdict, PointGibbsTrace

logger = logging.getLogger(__name__)


def log_gibbs_ratio(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    p_top: float,
    x: PointPrefix,
    n: int,
    k: int,
) -> float:
    """log R_n(x) = log mu(B_n(x, 2^{-k})) + P_top n - S_n phi(x).

    Equals -n (P(x; n, k) - P_top) for the finite-scale local pressure P.

    Raises:
        CapacityError: If n + k + r - 1 exceeds the capacity of x
        SupportError: If the dynamical ball has zero mass
    """
    if mu.sft != sft:
        raise ValueError("measure lives on a different system")
    needed = n + k + phi.range - 1
    if needed > x.capacity:
        raise CapacityError(needed, x.capacity, f"Gibbs ratio (n={n}, k={k}, r={phi.range})")
    log_mass = log_cylinder_measure(mu, dynamical_ball_cylinder(n, k, x))
    if log_mass == -math.inf:
        raise SupportError(f"cylinder of length {n + k} has zero mass")
    return log_mass + p_top * n - birkhoff_sum(phi, x, n)


def gibbs_ratio(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    p_top: float,
    x: PointPrefix,
    n: int,
    k: int,
) -> float:
    """R_n(x) = mu(B_n(x, 2^{-k})) / exp(-P_top n + S_n phi(x))."""
    return math.exp(log_gibbs_ratio(mu, sft, phi, p_top, x, n, k))


def fit_tail_slope(n_grid: list[int], log_deltas: list[float]) -> float:
    """Least-squares slope of log delta_n against n over the upper half of the grid."""
    if len(n_grid) < 2:
        raise ValueError("slope fit needs at least two n values")
    start = min(len(n_grid) // 2, len(n_grid) - 2)
    return float(stats.linregress(n_grid[start:], log_deltas[start:]).slope)


def _trace_point(
    mu: MarkovMeasure,
    phi: LocallyConstantPotential,
    p_top: float,
    x: PointPrefix,
    n_grid: list[int],
    k: int,
    point_id: int,
) -> PointGibbsTrace:
    log_ratios = [log_gibbs_ratio(mu, mu.sft, phi, p_top, x, n, k) for n in n_grid]
    log_deltas = [abs(v) for v in log_ratios]
    return PointGibbsTrace(
        point_id=point_id,
        log_ratios=log_ratios,
        log_deltas=log_deltas,
        slope=fit_tail_slope(n_grid, log_deltas),
    )


def gibbs_diagnose(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    p_top: float,
    batch: SampleBatch,
    n_grid: list[int],
    k: int,
    slope_tol: float | None = None,
    const_bound: float | None = None,
    threads: int = 1,
) -> GibbsDiagnostics:
    """Classify a measure as Gibbs, weak-Gibbs or neither at radius 2^{-k}.

    delta_n(x) = max(R_n, 1/R_n) is the smallest constant that brackets
    mu(B_n) between exp(-P_top n + S_n phi) / delta_n and delta_n times it.

    Verdict:
        gibbs       sup of delta_n over batch and grid <= const_bound
        weak_gibbs  otherwise, if every point's tail slope of log delta_n is
                    within slope_tol
        rejected    otherwise

    Args:
        mu: Measure under test
        sft: System of mu
        phi: Potential
        p_top: Topological pressure of phi
        batch: Points sampled from mu
        n_grid: Increasing n values (at least two)
        k: Radius exponent
        slope_tol: Slope tolerance in nats per step (default: settings)
        const_bound: Bound for the gibbs verdict (default: settings)
        threads: Worker threads

    Returns:
        GibbsDiagnostics with every per-point trace
    """
    if mu.sft != sft:
        raise ValueError("measure lives on a different system")
    slope_tol = settings.slope_tol if slope_tol is None else slope_tol
    const_bound = settings.const_bound if const_bound is None else const_bound
    n_grid = sorted(set(n_grid))
    if len(n_grid) < 2:
        raise ValueError("Gibbs diagnostics need at least two n values")

    def run(item: tuple[int, PointPrefix]) -> PointGibbsTrace:
        return _trace_point(mu, phi, p_top, item[1], n_grid, k, item[0])

    items = list(enumerate(batch.points))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            traces = list(pool.map(run, items))
    else:
        traces = [run(item) for item in items]

    slopes = np.array([trace.slope for trace in traces])
    sup_log_delta = max(max(trace.log_deltas) for trace in traces)
    worst = int(np.argmax(np.abs(slopes)))
    with np.errstate(over="ignore"):
        sup_delta = float(np.exp(sup_log_delta))

    if sup_delta <= const_bound:
        verdict = GibbsVerdict.GIBBS
    elif np.all(np.abs(slopes) <= slope_tol):
        verdict = GibbsVerdict.WEAK_GIBBS
    else:
        verdict = GibbsVerdict.REJECTED

    diagnostics = GibbsDiagnostics(
        k=k,
        p_top=p_top,
        n_grid=n_grid,
        slope_tol=slope_tol,
        const_bound=const_bound,
        per_point=traces,
        sup_log_delta=sup_log_delta,
        sup_delta=sup_delta,
        worst_point=traces[worst].point_id,
        worst_slope=float(slopes[worst]),
        mean_slope=float(np.mean(slopes)),
        rejecting_fraction=float(np.mean(np.abs(slopes) > slope_tol)),
        verdict=verdict,
    )
    logger.info(
        "Gibbs diagnostics at k=%d: %s (sup log delta %.3f, worst slope %.4f at point %d)",
        k, verdict.value, sup_log_delta, diagnostics.worst_slope, diagnostics.worst_point,
    )
    return diagnostics


def gibbs_sweep(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    p_top: float,
    batch: SampleBatch,
    n_grid: list[int],
    k_values: list[int],
    slope_tol: float | None = None,
    const_bound: float | None = None,
    threads: int = 1,
) -> list[GibbsDiagnostics]:
    """One diagnostics run per radius exponent, in increasing k."""
    return [
        gibbs_diagnose(mu, sft, phi, p_top, batch, n_grid, k, slope_tol, const_bound, threads)
        for k in sorted(set(k_values))
    ]
