"""Tests for Gibbs ratios, the weak-Gibbs verdict and the equilibrium verdict."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import GibbsHypothesisError
from src.gibbs import (
    EquilibriumVerdict,
    GibbsVerdict,
    SandwichEntry,
    fit_tail_slope,
    gibbs_diagnose,
    gibbs_ratio,
    gibbs_sweep,
    log_gibbs_ratio,
    metric_pressure_gap,
    verify_corollary_b,
)
from src.local_pressure import local_pressure_at
from src.measures import bernoulli, sample
from src.pressure import equilibrium_measure, topological_pressure
from src.symbolic import full_shift, shipped_examples, zero_potential

FULL2 = full_shift(2)
ZERO = zero_potential(FULL2)
FAIR = bernoulli(FULL2, [0.5, 0.5])
EXAMPLES = shipped_examples()


def test_fit_tail_slope_uses_upper_half():
    n_grid = [10, 20, 30, 40]
    log_deltas = [100.0, -50.0, 3.0, 5.0]
    assert fit_tail_slope(n_grid, log_deltas) == pytest.approx(0.2)
    assert fit_tail_slope([10, 20], [1.0, 2.0]) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        fit_tail_slope([10], [1.0])


def test_log_ratio_is_scaled_local_pressure_deviation():
    mu = bernoulli(FULL2, [0.8, 0.2])
    x = sample(mu, 1, 40, seed=5).points[0]
    p_top = math.log(2)
    value = local_pressure_at(mu, FULL2, ZERO, x, 30, 3)
    assert log_gibbs_ratio(mu, FULL2, ZERO, p_top, x, 30, 3) == pytest.approx(-30 * (value - p_top))
    assert gibbs_ratio(mu, FULL2, ZERO, p_top, x, 5, 0) == pytest.approx(
        math.exp(log_gibbs_ratio(mu, FULL2, ZERO, p_top, x, 5, 0))
    )


def test_fair_coin_is_gibbs_with_constant_ratio():
    batch = sample(FAIR, 20, 102, seed=1)
    diagnostics = gibbs_diagnose(FAIR, FULL2, ZERO, math.log(2), batch, [25, 50, 100], k=2)
    assert diagnostics.verdict == GibbsVerdict.GIBBS
    assert diagnostics.sup_delta == pytest.approx(4.0)
    assert diagnostics.mean_slope == pytest.approx(0.0, abs=1e-12)
    assert diagnostics.rejecting_fraction == 0.0


def test_weak_gibbs_when_constant_exceeds_bound():
    batch = sample(FAIR, 20, 102, seed=1)
    diagnostics = gibbs_diagnose(
        FAIR, FULL2, ZERO, math.log(2), batch, [25, 50, 100], k=2, const_bound=2.0
    )
    assert diagnostics.verdict == GibbsVerdict.WEAK_GIBBS
    assert diagnostics.accepted

    verdict = verify_corollary_b(FAIR, FULL2, ZERO, batch, [25, 50, 100], 2, diagnostics=diagnostics)
    assert verdict.is_equilibrium
    assert verdict.gibbs_verdict == GibbsVerdict.WEAK_GIBBS
    assert len(verdict.sandwich_trace) == 20 * 3
    assert all(entry.holds for entry in verdict.sandwich_trace)


@pytest.mark.parametrize("label,sft,phi", EXAMPLES, ids=[label for label, _, _ in EXAMPLES])
def test_equilibrium_states_pass(label, sft, phi):
    mu = equilibrium_measure(sft, phi)
    n_grid = [10, 20, 40, 80]
    batch = sample(mu, 20, 81 + phi.range - 1, seed=11)
    p_top = topological_pressure(sft, phi).value
    diagnostics = gibbs_diagnose(mu, sft, phi, p_top, batch, n_grid, k=1)
    assert diagnostics.verdict == GibbsVerdict.GIBBS

    verdict = verify_corollary_b(mu, sft, phi, batch, n_grid, 1, diagnostics=diagnostics)
    assert verdict.is_equilibrium
    assert abs(verdict.gap) <= 1e-8
    assert verdict.sampled_consistent


def test_biased_coin_is_rejected():
    mu = bernoulli(FULL2, [0.9, 0.1])
    n_grid = list(range(50, 401, 50))
    batch = sample(mu, 200, 400, seed=7)
    diagnostics = gibbs_diagnose(mu, FULL2, ZERO, math.log(2), batch, n_grid, k=0)
    expected = math.log(2) + 0.9 * math.log(0.9) + 0.1 * math.log(0.1)

    assert diagnostics.verdict == GibbsVerdict.REJECTED
    assert diagnostics.rejecting_fraction >= 0.95
    assert diagnostics.mean_slope == pytest.approx(expected, abs=0.05)
    slopes = diagnostics.slopes
    assert len(slopes) == 200
    rejecting = float(np.mean(np.abs(slopes) > diagnostics.slope_tol))
    assert diagnostics.rejecting_fraction == pytest.approx(rejecting)
    assert abs(diagnostics.worst_slope) == pytest.approx(float(np.max(np.abs(slopes))))

    p_top, metric, gap = metric_pressure_gap(mu, FULL2, ZERO)
    assert p_top == pytest.approx(math.log(2), abs=1e-12)
    assert gap == pytest.approx(expected, abs=1e-10)

    with pytest.raises(GibbsHypothesisError):
        verify_corollary_b(mu, FULL2, ZERO, batch, n_grid, 0, diagnostics=diagnostics)


def test_gibbs_sweep_runs_each_radius():
    batch = sample(FAIR, 10, 60, seed=2)
    sweep = gibbs_sweep(FAIR, FULL2, ZERO, math.log(2), batch, [20, 40, 50], [3, 0, 1])
    assert [d.k for d in sweep] == [0, 1, 3]
    assert [d.sup_delta for d in sweep] == pytest.approx([1.0, 2.0, 8.0])


def test_diagnostics_need_two_n_values():
    batch = sample(FAIR, 5, 30, seed=0)
    with pytest.raises(ValueError):
        gibbs_diagnose(FAIR, FULL2, ZERO, math.log(2), batch, [20, 20], k=0)


def test_threads_do_not_change_diagnostics():
    mu = bernoulli(FULL2, [0.6, 0.4])
    batch = sample(mu, 30, 80, seed=4)
    serial = gibbs_diagnose(mu, FULL2, ZERO, math.log(2), batch, [20, 40, 80], k=0)
    parallel = gibbs_diagnose(mu, FULL2, ZERO, math.log(2), batch, [20, 40, 80], k=0, threads=3)
    assert serial == parallel


def test_sandwich_entry():
    assert SandwichEntry(point_id=0, n=10, lower=0.5, middle=0.6, upper=0.7).holds
    assert not SandwichEntry(point_id=0, n=10, lower=0.5, middle=0.8, upper=0.7).holds


def test_verdict_rejects_broken_sandwich():
    with pytest.raises(ValidationError):
        EquilibriumVerdict(
            p_top=0.6,
            metric_pressure=0.6,
            gap=0.0,
            eq_tol=1e-8,
            is_equilibrium=True,
            gibbs_verdict=GibbsVerdict.GIBBS,
            k=0,
            sandwich_trace=[SandwichEntry(point_id=0, n=10, lower=0.5, middle=0.8, upper=0.7)],
            sampled_mean=0.6,
            sampled_tolerance=0.1,
            sampled_consistent=True,
        )


@pytest.mark.parametrize("label,sft,phi", EXAMPLES, ids=[label for label, _, _ in EXAMPLES])
def test_equilibrium_ratio_is_bounded_by_eigenvectors(label, sft, phi):
    # at k = 1 the ratio telescopes to pi(x_0) h(x_n) / h(x_0)
    report = topological_pressure(sft, phi)
    mu = equilibrium_measure(sft, phi)
    batch = sample(mu, 30, 81 + phi.range - 1, seed=17)
    diagnostics = gibbs_diagnose(mu, sft, phi, report.value, batch, [10, 20, 40, 80], k=1)
    bound = 2 * (report.log_eigvec_spread + float(np.max(np.abs(mu.log_pi))))
    assert diagnostics.sup_log_delta <= bound + 1e-9
