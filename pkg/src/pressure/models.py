"""Models for Perron data, pressure reports, recoded systems and variational sweeps."""

import math
from collections.abc import Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..measures.markov import cylinder_measure
from ..measures.models import MarkovMeasure
from ..symbolic.models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType, Word

RESIDUAL_BOUND = 1e-12
VARIATIONAL_SLACK = 1e-10


class PerronData(BaseModel):
    """Perron root of a primitive matrix with its positive eigenvectors.

    `right` is normalized to max 1; `left` is scaled so that left . right = 1.
    """

    model_config = ConfigDict(frozen=True)

    eigenvalue: float = Field(gt=0)
    right: tuple[float, ...]
    left: tuple[float, ...]
    iterations: int
    residual: float


class PressureReport(BaseModel):
    """Topological pressure P_top(phi) = log of the Perron root of the transfer matrix."""

    value: float
    perron_eigenvalue: float = Field(gt=0)
    right_eigvec: list[float]
    left_eigvec: list[float]
    iterations: int = Field(ge=0)
    residual: float = Field(ge=0)
    alphabet_size: int
    recoded: bool = False  # True when computed on the higher-block system

    @model_validator(mode="after")
    def _check_report(self) -> "PressureReport":
        if abs(self.value - math.log(self.perron_eigenvalue)) > 1e-12 * max(1.0, abs(self.value)):
            raise ValueError("pressure value must equal the log of the Perron eigenvalue")
        if self.residual > RESIDUAL_BOUND:
            raise ValueError(f"Perron residual {self.residual:.2e} exceeds {RESIDUAL_BOUND:.0e}")
        if min(self.right_eigvec) <= 0 or min(self.left_eigvec) <= 0:
            raise ValueError("Perron eigenvectors must be strictly positive")
        return self

    @property
    def log_eigvec_spread(self) -> float:
        """max|log h| + max|log nu|, which bounds the Gibbs constant of the equilibrium measure."""
        return max(abs(math.log(v)) for v in self.right_eigvec) + max(
            abs(math.log(v)) for v in self.left_eigvec
        )

    def oracle_gap_constant(self, potential_range: int) -> float:
        """C with |log Z_n / n - P_top| <= C / n for the window-truncated partition function.

        Z_n is 1^T L^(n-r+1) v for a positive boundary vector v, and the
        max-normalized right eigenvector h sandwiches every positive vector
        between min(h) and 1, which gives log m + max|log h| + (r - 1) |P_top|
        with m the alphabet of L.
        """
        return (
            math.log(self.alphabet_size)
            + max(abs(math.log(v)) for v in self.right_eigvec)
            + (potential_range - 1) * abs(self.value)
        )


class OracleRow(BaseModel):
    """One brute-force partition-function evaluation against the Perron value."""

    n: int
    word_count: int
    log_z: float
    normalized: float  # log Z_n / n
    gap: float  # |log Z_n / n - P_top|


class RecodedSystem(BaseModel):
    """Higher-block presentation of a range-r potential as a range-2 potential.

    Symbols of `sft` are the admissible (r-1)-words of `original`, listed in
    `blocks` in lexicographic order. A point x maps to the sequence of its
    (r-1)-windows.
    """

    model_config = ConfigDict(frozen=True)

    original: SubshiftOfFiniteType
    original_potential: LocallyConstantPotential
    sft: SubshiftOfFiniteType
    phi: LocallyConstantPotential
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_length(self) -> int:
        return self.original_potential.range - 1

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        return {block: i for i, block in enumerate(self.blocks)}

    def encode(self, symbols: Sequence[int]) -> list[int] | None:
        """Recoded symbols of an original word, or None if a window is inadmissible.

        A word of length L >= r-1 becomes L - r + 2 block symbols.
        """
        length = self.block_length
        if len(symbols) < length:
            raise ValueError(f"words shorter than {length} have no block encoding")
        index = self.index
        encoded = []
        for i in range(len(symbols) - length + 1):
            block = index.get(tuple(int(s) for s in symbols[i : i + length]))
            if block is None:
                return None
            encoded.append(block)
        if any(not self.sft.allows(a, b) for a, b in zip(encoded, encoded[1:])):
            return None
        return encoded

    def encode_point(self, x: PointPrefix) -> PointPrefix:
        """Recoded prefix of a point; the capacity shrinks by r - 2."""
        encoded = self.encode(x.symbols)
        if encoded is None:
            raise ValueError("point prefix is not admissible for the original system")
        return PointPrefix(word=Word(symbols=tuple(encoded)))

    def decode(self, block_symbols: Sequence[int]) -> list[int]:
        """Original word spelled by a sequence of block symbols."""
        if not block_symbols:
            return []
        word = list(self.blocks[block_symbols[0]])
        word.extend(self.blocks[b][-1] for b in block_symbols[1:])
        return word

    def original_cylinder_measure(self, mu: MarkovMeasure, w: Word) -> float:
        """Mass of an original-alphabet cylinder under a measure on the recoded system.

        Words shorter than r-1 sum the stationary masses of the blocks extending them.
        """
        if mu.sft != self.sft:
            raise ValueError("measure does not live on the recoded system")
        self.original.check_symbols(w.symbols)
        if w.length < self.block_length:
            pi = mu.pi
            return float(
                sum(pi[i] for i, block in enumerate(self.blocks) if block[: w.length] == w.symbols)
            )
        encoded = self.encode(w.symbols)
        if encoded is None:
            return 0.0
        return cylinder_measure(mu, Word(symbols=tuple(encoded)))


class VariationalSweep(BaseModel):
    """Metric pressures of random Markov measures against P_top and the equilibrium value."""

    p_top: float
    equilibrium_value: float
    random_values: list[float]
    seed: int

    @property
    def max_random(self) -> float:
        return max(self.random_values) if self.random_values else -math.inf

    @property
    def supremum(self) -> float:
        return max(self.max_random, self.equilibrium_value)

    @property
    def attained(self) -> bool:
        """Whether the equilibrium measure attains P_top."""
        return abs(self.equilibrium_value - self.p_top) <= VARIATIONAL_SLACK

    @model_validator(mode="after")
    def _check_inequality(self) -> "VariationalSweep":
        if self.supremum > self.p_top + VARIATIONAL_SLACK:
            raise ValueError(
                f"variational inequality violated: {self.supremum} > P_top = {self.p_top}"
            )
        return self
