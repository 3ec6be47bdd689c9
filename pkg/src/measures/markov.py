"""Exact Markov measures: stationary vectors, cylinder masses, entropy and integrals."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy import stats

from ..errors import ReducibleError
from ..symbolic.core import birkhoff_sum, is_admissible
from ..symbolic.models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType, Word
from .models import AxiomDefects, MarkovMeasure

logger = logging.getLogger(__name__)


def communicating_classes(matrix: np.ndarray) -> list[list[int]]:
    """Communicating classes of the directed graph with edges where matrix > 0.

    Computed from the reachability closure; classes are listed by smallest member.
    """
    adjacency = np.asarray(matrix) > 0
    m = adjacency.shape[0]
    reach = adjacency | np.eye(m, dtype=bool)
    while True:
        closure = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if np.array_equal(closure, reach):
            break
        reach = closure
    mutual = reach & reach.T
    classes: list[list[int]] = []
    seen: set[int] = set()
    for i in range(m):
        if i not in seen:
            members = np.flatnonzero(mutual[i]).tolist()
            seen.update(members)
            classes.append(members)
    return classes


def is_irreducible(matrix: np.ndarray) -> bool:
    return len(communicating_classes(matrix)) == 1


def stationary_vector(Q: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """Unique stationary distribution of an irreducible row-stochastic matrix.

    Uses Grassmann-Taksar-Heyman elimination, which involves no subtractions
    and stays accurate for nearly reducible chains.

    Args:
        Q: Row-stochastic matrix

    Returns:
        Probability vector pi with pi Q = pi

    Raises:
        ReducibleError: If Q is reducible
    """
    P = np.array(Q, dtype=float)
    classes = communicating_classes(P)
    if len(classes) > 1:
        raise ReducibleError(classes)

    n = P.shape[0]
    for k in range(n - 1, 0, -1):
        s = P[k, :k].sum()
        P[:k, k] /= s
        P[:k, :k] += np.outer(P[:k, k], P[k, :k])
    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ P[:k, k]
    return pi / pi.sum()


def bernoulli(sft: SubshiftOfFiniteType, probabilities: Sequence[float], label: str | None = None) -> MarkovMeasure:
    """Bernoulli (i.i.d.) measure with the given symbol probabilities.

    Raises:
        ValueError: If the probabilities do not form a distribution or charge forbidden pairs
        PreconditionError: If the measure is atomic (e.g. a point mass)
    """
    p = np.array(probabilities, dtype=float)
    if p.shape != (sft.alphabet_size,) or np.any(p < 0):
        raise ValueError(f"need {sft.alphabet_size} non-negative probabilities")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    p = p / p.sum()
    Q = np.tile(p, (sft.alphabet_size, 1))
    return MarkovMeasure(
        sft=sft,
        stochastic=tuple(map(tuple, Q.tolist())),
        stationary=tuple(p.tolist()),
        label=label or f"bernoulli{tuple(round(v, 6) for v in p.tolist())}",
    )


def markov(sft: SubshiftOfFiniteType, stochastic: np.ndarray | Sequence[Sequence[float]], label: str = "markov") -> MarkovMeasure:
    """Markov measure with the given transition probabilities and its stationary start.

    Raises:
        ReducibleError: If the stochastic matrix is reducible
    """
    Q = np.array(stochastic, dtype=float)
    if Q.shape != (sft.alphabet_size, sft.alphabet_size) or np.any(Q < 0):
        raise ValueError(f"stochastic matrix must be a non-negative {sft.alphabet_size}x{sft.alphabet_size} matrix")
    if np.max(np.abs(Q.sum(axis=1) - 1.0)) > 1e-9:
        raise ValueError("rows of the stochastic matrix must sum to 1")
    Q = Q / Q.sum(axis=1, keepdims=True)
    pi = stationary_vector(Q)
    return MarkovMeasure(
        sft=sft,
        stochastic=tuple(map(tuple, Q.tolist())),
        stationary=tuple(pi.tolist()),
        label=label,
    )


def random_markov(sft: SubshiftOfFiniteType, rng: np.random.Generator, label: str = "random-markov") -> MarkovMeasure:
    """Markov measure with Dirichlet(1, ..., 1) rows on the allowed transitions."""
    A = sft.matrix
    Q = np.zeros(A.shape)
    for i in range(A.shape[0]):
        allowed = np.flatnonzero(A[i])
        Q[i, allowed] = rng.dirichlet(np.ones(len(allowed)))
    return markov(sft, Q, label=label)


def log_cylinder_measure(mu: MarkovMeasure, w: Word) -> float:
    """Natural log of mu([w]); -inf when the cylinder has zero mass.

    Raises:
        ValueError: If a symbol is out of range
    """
    mu.sft.check_symbols(w.symbols)
    if w.length == 0:
        return 0.0
    if not is_admissible(mu.sft, w):
        return -np.inf
    s = w.array
    return float(mu.log_pi[s[0]] + np.sum(mu.log_Q[s[:-1], s[1:]]))


def cylinder_measure(mu: MarkovMeasure, w: Word) -> float:
    """mu([w]) = pi[w_0] * prod Q[w_i][w_{i+1}]; 1 for the empty word, 0 if inadmissible."""
    return float(np.exp(log_cylinder_measure(mu, w)))


def entropy(mu: MarkovMeasure) -> float:
    """Kolmogorov-Sinai entropy -sum_i pi_i sum_j Q_ij log Q_ij, in nats."""
    Q = mu.Q
    return float(sum(p * stats.entropy(row) for p, row in zip(mu.pi, Q) if p > 0))


def _extend_masses(masses: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Masses of all one-symbol extensions, from masses of the words themselves."""
    last = np.arange(masses.size) % Q.shape[0]
    return (masses[:, None] * Q[last]).ravel()


def cylinder_mass_table(mu: MarkovMeasure, length: int) -> np.ndarray:
    """Masses of all m^length words, indexed lexicographically (0 for inadmissible words)."""
    if length == 0:
        return np.ones(1)
    masses = mu.pi
    Q = mu.Q
    for _ in range(length - 1):
        masses = _extend_masses(masses, Q)
    return masses


def integral(mu: MarkovMeasure, phi: LocallyConstantPotential) -> float:
    """Integral of phi: sum over admissible r-words of mu([w]) * phi(w)."""
    if phi.alphabet_size != mu.sft.alphabet_size:
        raise ValueError("potential and measure live on different alphabets")
    return float(cylinder_mass_table(mu, phi.range) @ phi.values)


def birkhoff_average_oracle(mu: MarkovMeasure, phi: LocallyConstantPotential, x: PointPrefix, n: int) -> float:
    """S_n phi(x) / n, which tends to the integral of phi for mu-typical x when mu is ergodic."""
    if phi.alphabet_size != mu.sft.alphabet_size:
        raise ValueError("potential and measure live on different alphabets")
    return birkhoff_sum(phi, x, n) / n


def axiom_defects(mu: MarkovMeasure, max_length: int) -> AxiomDefects:
    """Check Kolmogorov consistency, shift invariance and total mass on all words.

    Args:
        mu: Measure to check
        max_length: Longest word length to include

    Returns:
        Largest defect of each axiom over words of length 0..max_length
    """
    m = mu.sft.alphabet_size
    kolmogorov = shift_invariance = total_mass = 0.0
    Q = mu.Q
    shorter = np.ones(1)
    for length in range(1, max_length + 1):
        longer = mu.pi if length == 1 else _extend_masses(shorter, Q)
        kolmogorov = max(kolmogorov, float(np.max(np.abs(longer.reshape(-1, m).sum(axis=1) - shorter))))
        shift_invariance = max(
            shift_invariance, float(np.max(np.abs(longer.reshape(m, -1).sum(axis=0) - shorter)))
        )
        total_mass = max(total_mass, abs(float(longer.sum()) - 1.0))
        shorter = longer
    logger.debug(
        "axiom defects for %s up to length %d: %.2e %.2e %.2e",
        mu.label, max_length, kolmogorov, shift_invariance, total_mass,
    )
    return AxiomDefects(
        max_length=max_length,
        kolmogorov=kolmogorov,
        shift_invariance=shift_invariance,
        total_mass=total_mass,
    )
