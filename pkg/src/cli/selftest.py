"""Built-in acceptance suite run by `locpress selftest`."""

import logging
import math
import time
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel
from rich.table import Table

from ..gibbs.corollary import metric_pressure_gap, verify_corollary_b
from ..gibbs.diagnostics import gibbs_diagnose
from ..gibbs.models import GibbsVerdict
from ..local_pressure.estimators import (
    decomposition_check,
    invariance_defect,
    make_grid,
    verify_theorem_a,
)
from ..log import console
from ..measures.markov import axiom_defects, bernoulli, cylinder_measure, markov, random_markov
from ..measures.sampling import sample
from ..pressure.equilibrium import equilibrium_measure, metric_pressure
from ..pressure.recoding import block_recode
from ..pressure.transfer import log_partition_function_oracle, topological_pressure
from ..symbolic.core import admissible_words
from ..symbolic.systems import (
    full_shift,
    golden_mean_shift,
    indicator_potential,
    potential_from_function,
    potential_from_table,
    shipped_examples,
    zero_potential,
)
from .commands import cmd_local_pressure, results_payload
from .models import ExperimentConfig

logger = logging.getLogger(__name__)

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str
    seconds: float


def check_pressure_oracle() -> tuple[bool, str]:
    full2, golden = full_shift(2), golden_mean_shift()
    cases = [
        (full2, zero_potential(full2), math.log(2)),
        (full2, indicator_potential(full2), math.log(1 + math.e)),
        (golden, zero_potential(golden), math.log(GOLDEN_RATIO)),
    ]
    worst = 0.0
    for sft, phi, expected in cases:
        p_top = topological_pressure(sft, phi).value
        worst = max(worst, abs(p_top - expected))
        gap8 = abs(log_partition_function_oracle(sft, phi, 8) / 8 - p_top)
        gap16 = abs(log_partition_function_oracle(sft, phi, 16) / 16 - p_top)
        if not (gap16 <= gap8 + 1e-15 and gap8 <= 1 / 8 and gap16 <= 1 / 16):
            return False, f"oracle gaps {gap8:.3e} (n=8), {gap16:.3e} (n=16) on {sft.name}"
    return worst <= 1e-10, f"max |P_top - closed form| = {worst:.2e}"


def check_equilibrium_gibbs() -> tuple[bool, str]:
    count = 0
    for label, sft, phi in shipped_examples():
        mu = equilibrium_measure(sft, phi)
        p_top = topological_pressure(sft, phi).value
        if abs(metric_pressure(mu, phi) - p_top) > 1e-10:
            return False, f"{label}: metric pressure differs from P_top"
        n_grid = [10, 20, 40, 80]
        batch = sample(mu, 20, max(n_grid) + 1 + phi.range - 1, seed=11)
        diagnostics = gibbs_diagnose(mu, sft, phi, p_top, batch, n_grid, k=1)
        if diagnostics.verdict != GibbsVerdict.GIBBS:
            return False, f"{label}: verdict {diagnostics.verdict.value}"
        verdict = verify_corollary_b(mu, sft, phi, batch, n_grid, 1, diagnostics=diagnostics)
        if not verdict.is_equilibrium:
            return False, f"{label}: gap {verdict.gap:.2e}"
        count += 1
    return count >= 4, f"{count} (system, potential) pairs are Gibbs equilibrium states"


def check_exact_local_pressure() -> tuple[bool, str]:
    sft = full_shift(2)
    phi = indicator_potential(sft)
    mu = equilibrium_measure(sft, phi)
    batch = sample(mu, 50, 100, seed=3)
    report = verify_theorem_a(mu, sft, phi, batch, make_grid([10, 50, 100], [0]))
    expected = math.log(1 + math.e)
    worst = max(abs(v - expected) for estimate in report.per_point for v in estimate.values)
    return worst <= 1e-10 and report.sample_std <= 1e-10, f"max deviation {worst:.2e}, std {report.sample_std:.1e}"


def check_monte_carlo_local_pressure() -> tuple[bool, str]:
    sft = full_shift(2)
    mu = markov(sft, [[0.0, 1.0], [0.5, 0.5]])
    phi = potential_from_table(sft, 2, [1.0, 0.0, 0.0, 1.0])
    batch = sample(mu, 1000, 407, seed=2024)
    report = verify_theorem_a(mu, sft, phi, batch, [(400, 6)])
    return report.within_tolerance, (
        f"|mean - target| = {report.deviation:.4f} <= {report.sample_tolerance:.4f}"
    )


def check_decomposition() -> tuple[bool, str]:
    rng = np.random.default_rng(5)
    worst = 0.0
    systems = [full_shift(2), full_shift(3), golden_mean_shift()]
    for trial in range(20):
        sft = systems[trial % len(systems)]
        mu = random_markov(sft, rng)
        r = 1 + trial % 2
        phi = potential_from_function(sft, r, lambda w: float(rng.normal()))
        batch = sample(mu, 50, 64, seed=trial)
        for x in batch.points:
            for _ in range(10):
                n, k = int(rng.integers(1, 50)), int(rng.integers(0, 12))
                lhs, rhs = decomposition_check(mu, phi, x, n, k)
                worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-12, f"10000 tuples, max |lhs - rhs| = {worst:.1e}"


def check_invariance_defect() -> tuple[bool, str]:
    sft = golden_mean_shift()
    phi = zero_potential(sft)
    mu = equilibrium_measure(sft, phi)
    batch = sample(mu, 100, 402, seed=6)
    failures = 0
    for x in batch.points:
        at_100 = invariance_defect(mu, phi, x, 100, 2, aligned=True)
        at_400 = invariance_defect(mu, phi, x, 400, 2, aligned=True)
        failures += at_400 > 0.5 * at_100 + 1e-12
    return failures == 0, f"{failures} of 100 points fail to halve the defect"


def check_gibbs_rejection() -> tuple[bool, str]:
    sft = full_shift(2)
    phi = zero_potential(sft)
    mu = bernoulli(sft, [0.9, 0.1])
    n_grid = list(range(50, 401, 50))
    batch = sample(mu, 200, 400, seed=7)
    diagnostics = gibbs_diagnose(mu, sft, phi, math.log(2), batch, n_grid, k=0)
    expected_slope = abs(math.log(2) + 0.9 * math.log(0.9) + 0.1 * math.log(0.1))
    _, _, gap = metric_pressure_gap(mu, sft, phi)
    closed_form = math.log(2) + 0.9 * math.log(0.9) + 0.1 * math.log(0.1)
    passed = (
        diagnostics.verdict == GibbsVerdict.REJECTED
        and diagnostics.rejecting_fraction >= 0.95
        and abs(diagnostics.mean_slope - expected_slope) <= 0.05
        and abs(gap - closed_form) <= 1e-10
    )
    return passed, (
        f"mean slope {diagnostics.mean_slope:.4f} (expected {expected_slope:.4f}), "
        f"{diagnostics.rejecting_fraction:.0%} rejecting, gap {gap:.6f}"
    )


def check_measure_axioms() -> tuple[bool, str]:
    worst = 0.0
    for _, sft, phi in shipped_examples():
        worst = max(worst, axiom_defects(equilibrium_measure(sft, phi), 10).worst)
    full2 = full_shift(2)
    for mu in (bernoulli(full2, [0.5, 0.5]), markov(full2, [[0.0, 1.0], [0.5, 0.5]])):
        worst = max(worst, axiom_defects(mu, 10).worst)
    return worst <= 1e-10, f"worst axiom defect {worst:.1e}"


def check_block_recoding() -> tuple[bool, str]:
    worst = 0.0
    for sft in (full_shift(2), golden_mean_shift()):
        direct_phi = potential_from_function(sft, 2, lambda w: 0.3 * w[0] - 0.7 * w[1] * w[0] + 0.2 * w[1])
        phi3 = potential_from_function(sft, 3, lambda w: direct_phi.value(w[:2]))
        worst = max(worst, abs(topological_pressure(sft, phi3).value - topological_pressure(sft, direct_phi).value))
        recoded = block_recode(sft, phi3)
        mu_recoded = equilibrium_measure(recoded.sft, recoded.phi)
        mu_direct = equilibrium_measure(sft, direct_phi)
        for length in range(0, 9):
            for w in admissible_words(sft, length):
                translated = recoded.original_cylinder_measure(mu_recoded, w)
                worst = max(worst, abs(translated - cylinder_measure(mu_direct, w)))
    return worst <= 1e-10, f"max pressure / mass difference {worst:.1e}"


def check_determinism() -> tuple[bool, str]:
    config = ExperimentConfig.model_validate(
        {
            "name": "selftest-determinism",
            "system": {"alphabet_size": 2, "transition": [[1, 1], [1, 0]], "name": "golden-mean"},
            "potential": {"range": 1, "table": [0.0, 0.0]},
            "measure": {"kind": "equilibrium"},
            "estimator": {"n_grid": [20, 40], "k": 1, "sample_count": 30, "capacity": 41, "seed": 99},
        }
    )
    first = results_payload(cmd_local_pressure(config, threads=1))
    second = results_payload(cmd_local_pressure(config, threads=2))
    return first == second, f"payloads of {len(first)} bytes {'match' if first == second else 'differ'}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("pressure oracle equivalence", check_pressure_oracle),
    ("equilibrium measures are Gibbs equilibrium states", check_equilibrium_gibbs),
    ("local pressure, exact case", check_exact_local_pressure),
    ("local pressure, Monte Carlo case", check_monte_carlo_local_pressure),
    ("decomposition identity", check_decomposition),
    ("finite-n invariance", check_invariance_defect),
    ("Gibbs rejection soundness", check_gibbs_rejection),
    ("measure axioms", check_measure_axioms),
    ("block recoding conservation", check_block_recoding),
    ("determinism", check_determinism),
]


def run_checks() -> list[CheckResult]:
    results = []
    for name, check in CHECKS:
        started = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as e:  # a crashing check is a failed check
            logger.exception("check %r raised", name)
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(
            CheckResult(name=name, passed=bool(passed), detail=detail, seconds=time.perf_counter() - started)
        )
    return results


def cmd_selftest(quiet: bool = False) -> int:
    """Run the acceptance suite; exit status 0 when every check passes."""
    results = run_checks()
    if not quiet:
        table = Table(title="Self-test")
        table.add_column("#", justify="right")
        table.add_column("Check")
        table.add_column("Result")
        table.add_column("Detail")
        table.add_column("Time", justify="right")
        for i, result in enumerate(results, 1):
            status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(str(i), result.name, status, result.detail, f"{result.seconds:.2f}s")
        console.print(table)
    return 0 if all(result.passed for result in results) else 1
