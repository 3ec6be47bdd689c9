"""Tests for Markov measures, exact cylinder masses and seeded sampling."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from scipy import stats

from src.errors import CapacityError, PreconditionError, ReducibleError
from src.measures import (
    MarkovMeasure,
    SampleBatch,
    axiom_defects,
    bernoulli,
    birkhoff_average_oracle,
    communicating_classes,
    cylinder_mass_table,
    cylinder_measure,
    entropy,
    integral,
    is_irreducible,
    log_cylinder_measure,
    markov,
    random_markov,
    sample,
    sample_point,
    stationary_vector,
)
from src.symbolic import (
    SubshiftOfFiniteType,
    Word,
    constant_potential,
    full_shift,
    golden_mean_shift,
    indicator_potential,
    is_admissible,
    point_from_symbols,
)

FORCED_Q = [[0.0, 1.0], [0.5, 0.5]]


def test_stationary_vector():
    pi = stationary_vector(FORCED_Q)
    assert pi == pytest.approx([1 / 3, 2 / 3], abs=1e-15)


def test_reducible_chain_is_rejected():
    with pytest.raises(ReducibleError) as excinfo:
        markov(full_shift(2), [[1.0, 0.0], [0.0, 1.0]])
    assert excinfo.value.classes == [[0], [1]]


def test_point_mass_is_atomic():
    with pytest.raises(PreconditionError):
        bernoulli(full_shift(2), [1.0, 0.0])


def test_periodic_orbit_is_atomic():
    with pytest.raises(PreconditionError):
        markov(full_shift(2), [[0.0, 1.0], [1.0, 0.0]])


def test_measure_may_not_charge_forbidden_transitions():
    with pytest.raises(ValidationError):
        bernoulli(golden_mean_shift(), [0.5, 0.5])


def test_stationary_vector_must_be_invariant():
    with pytest.raises(ValidationError):
        MarkovMeasure(sft=full_shift(2), stochastic=((0.0, 1.0), (0.5, 0.5)), stationary=(0.5, 0.5))


def test_cylinder_masses():
    mu = markov(full_shift(2), FORCED_Q)
    assert cylinder_measure(mu, Word.of([0, 1, 1])) == pytest.approx(1 / 6)
    assert cylinder_measure(mu, Word.of([0, 0])) == 0.0
    assert log_cylinder_measure(mu, Word.of([0, 0])) == -math.inf
    assert cylinder_measure(mu, Word()) == 1.0


def test_inadmissible_cylinder_has_zero_mass():
    sft = golden_mean_shift()
    mu = markov(sft, [[0.5, 0.5], [1.0, 0.0]])
    assert cylinder_measure(mu, Word.of([0, 1, 1])) == 0.0


def test_entropy():
    full2 = full_shift(2)
    assert entropy(bernoulli(full2, [0.5, 0.5])) == pytest.approx(math.log(2), abs=1e-15)
    assert entropy(markov(full2, FORCED_Q)) == pytest.approx(2 / 3 * math.log(2), abs=1e-15)
    expected = -(0.9 * math.log(0.9) + 0.1 * math.log(0.1))
    assert entropy(bernoulli(full2, [0.9, 0.1])) == pytest.approx(expected, abs=1e-15)


def test_integral():
    full2 = full_shift(2)
    assert integral(bernoulli(full2, [0.9, 0.1]), indicator_potential(full2)) == pytest.approx(0.1)


@given(st.integers(0, 2**32 - 1), st.sampled_from(["full2", "full3", "golden"]))
@settings(max_examples=25, deadline=None)
def test_random_markov_measures_satisfy_axioms(seed, system):
    sft = {"full2": full_shift(2), "full3": full_shift(3), "golden": golden_mean_shift()}[system]
    mu = random_markov(sft, np.random.default_rng(seed))
    assert axiom_defects(mu, 6).worst <= 1e-12


def test_sampling_is_deterministic_and_thread_independent():
    mu = markov(full_shift(2), FORCED_Q)
    first = sample(mu, 20, 50, seed=4)
    assert first == sample(mu, 20, 50, seed=4)
    assert first == sample(mu, 20, 50, seed=4, threads=3)
    assert first != sample(mu, 20, 50, seed=5)


def test_point_depends_only_on_seed_and_index():
    mu = bernoulli(full_shift(3), [0.2, 0.3, 0.5])
    batch = sample(mu, 10, 30, seed=12)
    assert batch.points[7] == sample_point(mu, 30, 12, 7)


def test_samples_respect_the_support():
    sft = full_shift(2)
    mu = markov(sft, FORCED_Q)
    batch = sample(mu, 50, 100, seed=1)
    for x in batch.points:
        assert all(not (a == b == 0) for a, b in zip(x.symbols, x.symbols[1:]))

    golden = golden_mean_shift()
    parry_like = markov(golden, [[0.6, 0.4], [1.0, 0.0]])
    for x in sample(parry_like, 50, 100, seed=2).points:
        assert is_admissible(golden, x.word)


def test_sample_frequencies():
    mu = bernoulli(full_shift(2), [0.9, 0.1])
    symbols = sample(mu, 200, 400, seed=7).as_array()
    assert symbols.mean() == pytest.approx(0.1, abs=0.01)


def test_sample_needs_points():
    mu = bernoulli(full_shift(2), [0.5, 0.5])
    with pytest.raises(ValueError):
        sample(mu, 0, 10, seed=0)


def test_single_symbol_system_is_atomic():
    one = SubshiftOfFiniteType(alphabet_size=1, transition=((1,),))
    with pytest.raises(PreconditionError):
        bernoulli(one, [1.0])


def test_birkhoff_average_of_constant_potential():
    sft = full_shift(2)
    x = sample(bernoulli(sft, [0.5, 0.5]), 1, 50, seed=3).points[0]
    for n in (1, 7, 50):
        value = birkhoff_average_oracle(bernoulli(sft, [0.5, 0.5]), constant_potential(sft, -1.5), x, n)
        assert value == -1.5


def test_birkhoff_average_concentrates_on_the_integral():
    sft = full_shift(2)
    fair = bernoulli(sft, [0.5, 0.5])
    x = sample(fair, 1, 10_000, seed=2024).points[0]
    average = birkhoff_average_oracle(fair, indicator_potential(sft), x, 10_000)
    assert average == pytest.approx(0.5, abs=0.02)


def test_birkhoff_average_on_periodic_prefix():
    sft = full_shift(2)
    x = point_from_symbols(sft, [0, 1] * 50)
    fair = bernoulli(sft, [0.5, 0.5])
    for n in (2, 10, 100):
        assert birkhoff_average_oracle(fair, indicator_potential(sft), x, n) == 0.5


def test_birkhoff_average_needs_capacity():
    sft = full_shift(2)
    x = point_from_symbols(sft, [0, 1, 1])
    with pytest.raises(CapacityError):
        birkhoff_average_oracle(bernoulli(sft, [0.5, 0.5]), indicator_potential(sft), x, 4)


@given(st.integers(0, 2**32 - 1), st.sampled_from(["full2", "golden"]))
@settings(max_examples=15, deadline=None)
def test_entropy_matches_block_entropy(seed, system):
    sft = {"full2": full_shift(2), "golden": golden_mean_shift()}[system]
    mu = random_markov(sft, np.random.default_rng(seed))
    n = 14
    block_entropy = stats.entropy(cylinder_mass_table(mu, n)) / n
    assert abs(block_entropy - entropy(mu)) <= 2 * np.max(np.abs(mu.log_pi)) / n


def test_irreducibility():
    assert is_irreducible(np.array(FORCED_Q))
    assert not is_irreducible(np.eye(2))
    assert communicating_classes(np.array([[1, 1, 0], [1, 1, 0], [0, 1, 1]])) == [[0, 1], [2]]


def test_batch_rejects_inadmissible_points():
    golden = golden_mean_shift()
    good = point_from_symbols(full_shift(2), [0, 1, 0, 1])
    bad = point_from_symbols(full_shift(2), [0, 1, 1, 0])
    SampleBatch(sft=golden, points=[good], seed=0, measure_id="m", capacity=4)
    with pytest.raises(ValidationError):
        SampleBatch(sft=golden, points=[good, bad], seed=0, measure_id="m", capacity=4)
    ternary = point_from_symbols(full_shift(3), [0, 2])
    with pytest.raises(ValidationError):
        SampleBatch(sft=full_shift(2), points=[ternary], seed=0, measure_id="m", capacity=2)


def test_sampled_batch_carries_its_system():
    mu = markov(golden_mean_shift(), [[0.6, 0.4], [1.0, 0.0]])
    assert sample(mu, 5, 20, seed=0).sft == golden_mean_shift()
