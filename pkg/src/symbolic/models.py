"""Models for shift spaces, words, point prefixes and locally constant potentials."""

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SubshiftOfFiniteType(BaseModel):
    """One-sided subshift of finite type given by a 0/1 transition matrix.

    Points are sequences x_0 x_1 ... with transition[x_i][x_{i+1}] == 1; the
    shift map drops the first symbol.
    """

    model_config = ConfigDict(frozen=True)

    alphabet_size: int = Field(ge=1)
    transition: tuple[tuple[int, ...], ...]
    name: str | None = None

    @model_validator(mode="after")
    def _check_transition(self) -> "SubshiftOfFiniteType":
        m = self.alphabet_size
        if len(self.transition) != m or any(len(row) != m for row in self.transition):
            raise ValueError(f"transition must be a {m}x{m} matrix")
        if any(entry not in (0, 1) for row in self.transition for entry in row):
            raise ValueError("transition entries must be 0 or 1")
        matrix = np.array(self.transition)
        dead_rows = np.flatnonzero(matrix.sum(axis=1) == 0).tolist()
        dead_cols = np.flatnonzero(matrix.sum(axis=0) == 0).tolist()
        if dead_rows or dead_cols:
            raise ValueError(
                f"dead symbols: no successor for {dead_rows}, no predecessor for {dead_cols}"
            )
        return self

    @property
    def matrix(self) -> np.ndarray:
        """Transition matrix as an integer array."""
        return np.array(self.transition, dtype=np.int64)

    def allows(self, a: int, b: int) -> bool:
        """Check whether symbol b may follow symbol a."""
        return self.transition[a][b] == 1

    def check_symbols(self, symbols: Sequence[int]) -> None:
        """Raise ValueError if any symbol lies outside the alphabet."""
        for s in symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(f"symbol {s} out of range for alphabet of size {self.alphabet_size}")


class Word(BaseModel):
    """Finite word over the alphabet {0, ..., m-1}; denotes a cylinder set."""

    model_config = ConfigDict(frozen=True)

    symbols: tuple[int, ...] = ()

    @field_validator("symbols")
    @classmethod
    def _non_negative(cls, symbols: tuple[int, ...]) -> tuple[int, ...]:
        if any(s < 0 for s in symbols):
            raise ValueError("symbols must be non-negative")
        return symbols

    @classmethod
    def of(cls, symbols: Sequence[int]) -> "Word":
        """Build a word from any integer sequence."""
        return cls(symbols=tuple(int(s) for s in symbols))

    @property
    def length(self) -> int:
        return len(self.symbols)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.symbols, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.symbols)

    def extends(self, other: "Word") -> bool:
        """Check whether this word starts with `other`."""
        return self.symbols[: other.length] == other.symbols


class PointPrefix(BaseModel):
    """Finite prefix of a point of the shift space.

    The capacity is the longest horizon any estimator may query. Use
    `point_from_symbols` to build one; it checks admissibility.
    """

    model_config = ConfigDict(frozen=True)

    word: Word

    @property
    def capacity(self) -> int:
        return self.word.length

    @property
    def symbols(self) -> tuple[int, ...]:
        return self.word.symbols

    @property
    def array(self) -> np.ndarray:
        return self.word.array


class LocallyConstantPotential(BaseModel):
    """Potential depending on the first `range` coordinates of a point.

    `table` holds one value per word of length `range` over the full alphabet,
    indexed in lexicographic order (first symbol most significant). Values at
    words that are inadmissible for the system in use are never read.
    """

    model_config = ConfigDict(frozen=True)

    alphabet_size: int = Field(ge=1)
    range: int = Field(default=1, ge=1)
    table: tuple[float, ...]

    @model_validator(mode="after")
    def _check_table(self) -> "LocallyConstantPotential":
        expected = self.alphabet_size**self.range
        if len(self.table) != expected:
            raise ValueError(f"table needs {expected} values, got {len(self.table)}")
        if not all(math.isfinite(v) for v in self.table):
            raise ValueError("potential values must be finite")
        return self

    @property
    def values(self) -> np.ndarray:
        return np.array(self.table, dtype=float)

    @property
    def max_abs(self) -> float:
        return max(abs(v) for v in self.table)

    def code(self, symbols: Sequence[int]) -> int:
        """Lexicographic index of an r-word."""
        index = 0
        for s in symbols:
            index = index * self.alphabet_size + int(s)
        return index

    def value(self, symbols: Sequence[int]) -> float:
        """Evaluate the potential on an r-word."""
        if len(symbols) != self.range:
            raise ValueError(f"potential of range {self.range} evaluated on {len(symbols)} symbols")
        return self.table[self.code(symbols)]

    def window_codes(self, symbols: np.ndarray) -> np.ndarray:
        """Lexicographic indices of all length-r windows along the last axis."""
        windows = np.lib.stride_tricks.sliding_window_view(symbols, self.range, axis=-1)
        powers = self.alphabet_size ** np.arange(self.range - 1, -1, -1, dtype=np.int64)
        return windows @ powers

    def shifted(self, constant: float) -> "LocallyConstantPotential":
        """Return phi + constant."""
        return self.model_copy(update={"table": tuple(v + constant for v in self.table)})
