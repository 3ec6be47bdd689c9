"""Finite-scale local pressure and local entropy at points of a sampled batch.

With the dynamical ball B_n(x, 2^{-k}) equal to the cylinder of the first
n + k symbols of x:

    P(x; n, k) = (-log mu(B_n(x, 2^{-k})) + S_n phi(x)) / n
    H(x; n, k) = -log mu(B_n(x, 2^{-k})) / n

so P = H + S_n phi / n identically.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import CapacityError, SupportError
from ..measures.markov import entropy, integral, log_cylinder_measure
from ..measures.models import MarkovMeasure, SampleBatch
from ..symbolic.core import birkhoff_sum, dynamical_ball_cylinder, shift
from ..symbolic.models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType
from .models import GridCell, LocalPressureEstimate, TheoremAReport, finest_cell

logger = logging.getLogger(__name__)


def make_grid(n_values: list[int], k_values: list[int]) -> list[GridCell]:
    """All (n, k) pairs, ordered by k and then n."""
    if not n_values or not k_values:
        raise ValueError("grid needs at least one n and one k")
    if min(n_values) < 1 or min(k_values) < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return [(n, k) for k in sorted(set(k_values)) for n in sorted(set(n_values))]


def _check_inputs(mu: MarkovMeasure, sft: SubshiftOfFiniteType, phi: LocallyConstantPotential) -> None:
    if mu.sft != sft:
        raise ValueError("measure lives on a different system")
    if phi.alphabet_size != sft.alphabet_size:
        raise ValueError("potential and system use different alphabets")


def _log_ball_mass(mu: MarkovMeasure, x: PointPrefix, n: int, k: int) -> float:
    cylinder = dynamical_ball_cylinder(n, k, x)
    log_mass = log_cylinder_measure(mu, cylinder)
    if log_mass == -math.inf:
        raise SupportError(f"cylinder of length {cylinder.length} has zero mass")
    return log_mass


def local_pressure_at(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    x: PointPrefix,
    n: int,
    k: int,
) -> float:
    """Finite-scale local pressure P(x; n, k).

    Raises:
        CapacityError: If n + k + r - 1 exceeds the capacity of x
        SupportError: If the dynamical ball has zero mass
    """
    _check_inputs(mu, sft, phi)
    needed = n + k + phi.range - 1
    if needed > x.capacity:
        raise CapacityError(needed, x.capacity, f"local pressure (n={n}, k={k}, r={phi.range})")
    return (-_log_ball_mass(mu, x, n, k) + birkhoff_sum(phi, x, n)) / n


def local_entropy_at(mu: MarkovMeasure, sft: SubshiftOfFiniteType, x: PointPrefix, n: int, k: int) -> float:
    """Finite-scale Brin-Katok local entropy H(x; n, k).

    Raises:
        CapacityError: If n + k exceeds the capacity of x
        SupportError: If the dynamical ball has zero mass
    """
    if mu.sft != sft:
        raise ValueError("measure lives on a different system")
    return -_log_ball_mass(mu, x, n, k) / n


def decomposition_check(
    mu: MarkovMeasure, phi: LocallyConstantPotential, x: PointPrefix, n: int, k: int
) -> tuple[float, float]:
    """Both sides of P(x; n, k) = H(x; n, k) + S_n phi(x) / n."""
    lhs = local_pressure_at(mu, mu.sft, phi, x, n, k)
    rhs = local_entropy_at(mu, mu.sft, x, n, k) + birkhoff_sum(phi, x, n) / n
    return lhs, rhs


def invariance_defect(
    mu: MarkovMeasure,
    phi: LocallyConstantPotential,
    x: PointPrefix,
    n: int,
    k: int,
    aligned: bool = False,
) -> float:
    """Distance between the local pressure at x and at f(x).

    The plain defect compares both points at the same (n, k). The aligned
    defect compares P(x; n, k) with P(fx; n - 1, k): both numerators then
    cover the same coordinates of x and differ by a term independent of n,
    so the defect decays like 1/n.
    """
    fx = shift(x, 1)
    here = local_pressure_at(mu, mu.sft, phi, x, n, k)
    if aligned:
        if n < 2:
            raise ValueError("aligned defect needs n >= 2")
        return abs(here - local_pressure_at(mu, mu.sft, phi, fx, n - 1, k))
    return abs(here - local_pressure_at(mu, mu.sft, phi, fx, n, k))


def estimate_point(
    mu: MarkovMeasure,
    phi: LocallyConstantPotential,
    x: PointPrefix,
    grid: list[GridCell],
    point_id: int = 0,
) -> LocalPressureEstimate:
    """Evaluate one point over a grid, with the value at the largest n per k
    and the spread over the last quarter of n-values per k."""
    values, entropy_values, averages = [], [], []
    for n, k in grid:
        h = local_entropy_at(mu, mu.sft, x, n, k)
        average = birkhoff_sum(phi, x, n) / n
        values.append(local_pressure_at(mu, mu.sft, phi, x, n, k))
        entropy_values.append(h)
        averages.append(average)

    extrapolated_by_k: dict[int, float] = {}
    oscillation_by_k: dict[int, float] = {}
    for k in sorted({cell[1] for cell in grid}):
        series = sorted((n, v) for (n, kk), v in zip(grid, values) if kk == k)
        tail_size = max(min(2, len(series)), math.ceil(len(series) / 4))
        tail = [v for _, v in series[-tail_size:]]
        extrapolated_by_k[k] = series[-1][1]
        oscillation_by_k[k] = max(tail) - min(tail)

    return LocalPressureEstimate(
        point_id=point_id,
        grid=list(grid),
        values=values,
        entropy_values=entropy_values,
        birkhoff_averages=averages,
        extrapolated_by_k=extrapolated_by_k,
        tail_oscillation_by_k=oscillation_by_k,
        extrapolated=extrapolated_by_k[finest_cell(grid)[1]],
    )


def verify_theorem_a(
    mu: MarkovMeasure,
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    batch: SampleBatch,
    grid: list[GridCell],
    threads: int = 1,
) -> TheoremAReport:
    """Check that the local pressure averages to entropy + integral over a batch.

    Args:
        mu: Measure the batch was sampled from
        sft: System of mu
        phi: Potential
        batch: Sampled points
        grid: (n, k) cells to evaluate; the finest is the largest k, then largest n
        threads: Worker threads for per-point evaluation

    Returns:
        TheoremAReport with every raw per-point value

    Raises:
        CapacityError: If the grid needs more coordinates than the batch has
        SupportError: If a point lies off the support of mu
    """
    _check_inputs(mu, sft, phi)
    if batch.measure_id != mu.label:
        logger.warning("batch was sampled from %r, evaluating under %r", batch.measure_id, mu.label)
    n, k = finest_cell(grid)
    needed = max(cell[0] + cell[1] for cell in grid) + phi.range - 1
    if needed > batch.capacity:
        raise CapacityError(needed, batch.capacity, "local pressure grid")

    # The same-cell defect reads one coordinate more than the grid does.
    defect_n = n if n + k + phi.range <= batch.capacity else n - 1
    if defect_n < 1:
        raise CapacityError(n + k + phi.range, batch.capacity, "invariance defect")

    def evaluate(item: tuple[int, PointPrefix]) -> tuple[LocalPressureEstimate, float, float]:
        point_id, x = item
        estimate = estimate_point(mu, phi, x, grid, point_id)
        defect = invariance_defect(mu, phi, x, defect_n, k)
        aligned = invariance_defect(mu, phi, x, n, k, aligned=True) if n >= 2 else 0.0
        return estimate, defect, aligned

    items = list(enumerate(batch.points))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, items))
    else:
        results = [evaluate(item) for item in items]

    per_point = [r[0] for r in results]
    finest = np.array([estimate.value_at(n, k) for estimate in per_point])
    mean = float(np.mean(finest))
    std = float(np.std(finest))
    h = entropy(mu)
    phi_integral = integral(mu, phi)
    scale = mu.log_scale + phi.max_abs
    tolerance = 3.0 * std / math.sqrt(len(finest)) + 2.0 * scale / n
    target = h + phi_integral

    report = TheoremAReport(
        measure_id=mu.label,
        grid=list(grid),
        n=n,
        k=k,
        sample_mean=mean,
        sample_std=std,
        target=target,
        entropy=h,
        integral=phi_integral,
        sample_tolerance=tolerance,
        within_tolerance=abs(mean - target) <= tolerance,
        invariance_defect=float(np.mean([r[1] for r in results])),
        defect_cell=(defect_n, k),
        aligned_invariance_defect=float(np.mean([r[2] for r in results])),
        brin_katok=phi.max_abs == 0.0,
        per_point=per_point,
    )
    logger.info(
        "local pressure at (n=%d, k=%d): mean %.6f +- %.6f vs target %.6f (tolerance %.2e)",
        n, k, mean, std, target, tolerance,
    )
    return report
