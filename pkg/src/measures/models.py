"""Models for Markov measures and sampled point batches."""

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import PreconditionError
from ..symbolic.models import PointPrefix, SubshiftOfFiniteType

ROW_SUM_TOL = 1e-12
STATIONARY_TOL = 1e-10


def _safe_log(values: np.ndarray) -> np.ndarray:
    """Elementwise log with log(0) = -inf and no warnings."""
    out = np.full(values.shape, -np.inf)
    np.log(values, out=out, where=values > 0)
    return out


class MarkovMeasure(BaseModel):
    """Shift-invariant Markov measure on a subshift of finite type.

    mu([w_0 ... w_{n-1}]) = stationary[w_0] * prod stochastic[w_i][w_{i+1}].
    """

    model_config = ConfigDict(frozen=True)

    sft: SubshiftOfFiniteType
    stochastic: tuple[tuple[float, ...], ...]
    stationary: tuple[float, ...]
    label: str = "markov"

    @model_validator(mode="after")
    def _check_measure(self) -> "MarkovMeasure":
        m = self.sft.alphabet_size
        Q = np.array(self.stochastic, dtype=float)
        pi = np.array(self.stationary, dtype=float)
        if Q.shape != (m, m) or pi.shape != (m,):
            raise ValueError(f"stochastic must be {m}x{m} and stationary of length {m}")
        if np.any(Q < 0) or np.any(pi < 0):
            raise ValueError("probabilities must be non-negative")
        if np.max(np.abs(Q.sum(axis=1) - 1.0)) > ROW_SUM_TOL:
            raise ValueError("rows of the stochastic matrix must sum to 1")
        if abs(pi.sum() - 1.0) > ROW_SUM_TOL:
            raise ValueError("stationary vector must sum to 1")
        if np.max(np.abs(pi @ Q - pi)) > STATIONARY_TOL:
            raise ValueError("stationary vector is not invariant under the stochastic matrix")
        if np.any((Q > 0) & (self.sft.matrix == 0)):
            raise ValueError("stochastic matrix charges transitions the system forbids")

        # Atomic only if the support is a single periodic orbit.
        support = np.flatnonzero(pi > 0)
        restricted = Q[np.ix_(support, support)]
        if np.all(np.count_nonzero(restricted > 0, axis=1) == 1):
            raise PreconditionError(
                f"measure {self.label!r} is atomic: its support is a single periodic orbit"
            )
        return self

    @property
    def Q(self) -> np.ndarray:
        return np.array(self.stochastic, dtype=float)

    @property
    def pi(self) -> np.ndarray:
        return np.array(self.stationary, dtype=float)

    @property
    def log_Q(self) -> np.ndarray:
        return _safe_log(self.Q)

    @property
    def log_pi(self) -> np.ndarray:
        return _safe_log(self.pi)

    @property
    def log_scale(self) -> float:
        """max|log Q| + max|log pi| over positive entries (finite-scale error constant)."""
        Q = self.Q
        pi = self.pi
        return float(np.max(np.abs(np.log(Q[Q > 0]))) + np.max(np.abs(np.log(pi[pi > 0]))))


class SampleBatch(BaseModel):
    """Point prefixes sampled i.i.d. from a measure on `sft`; every point is admissible."""

    model_config = ConfigDict(frozen=True)

    sft: SubshiftOfFiniteType
    points: list[PointPrefix]
    seed: int
    measure_id: str
    capacity: int

    @model_validator(mode="after")
    def _check_capacities(self) -> "SampleBatch":
        if not self.points:
            raise ValueError("sample batch is empty")
        if any(p.capacity != self.capacity for p in self.points):
            raise ValueError("all points in a batch must share one capacity")
        symbols = self.as_array()
        if symbols.min() < 0 or symbols.max() >= self.sft.alphabet_size:
            raise ValueError("batch holds symbols outside the alphabet")
        allowed = self.sft.matrix[symbols[:, :-1], symbols[:, 1:]] == 1
        if not np.all(allowed):
            point = int(np.flatnonzero(~allowed.all(axis=1))[0])
            raise ValueError(f"point {point} of the batch is not admissible")
        return self

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        """Points as an integer array of shape (count, capacity)."""
        return np.array([p.symbols for p in self.points], dtype=np.int64)


class AxiomDefects(BaseModel):
    """Largest violations of the measure axioms over all words up to a length."""

    max_length: int
    kolmogorov: float  # |sum_a mu(w a) - mu(w)|
    shift_invariance: float  # |sum_a mu(a w) - mu(w)|
    total_mass: float  # |sum_w mu(w) - 1|

    @property
    def worst(self) -> float:
        return max(self.kolmogorov, self.shift_invariance, self.total_mass)
