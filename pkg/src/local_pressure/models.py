"""Models for per-point local pressure estimates and batch reports."""

import numpy as np
from pydantic import BaseModel, Field, model_validator

IDENTITY_TOL = 1e-12

GridCell = tuple[int, int]  # (n, k): n iterates, radius 2^{-k}


def finest_cell(grid: list[GridCell]) -> GridCell:
    """Largest k, then largest n."""
    return max(grid, key=lambda cell: (cell[1], cell[0]))


class LocalPressureEstimate(BaseModel):
    """Finite-scale local pressure and local entropy of one point over a grid.

    values[i] = (-log mu(B_n(x, 2^{-k})) + S_n phi(x)) / n for grid[i] = (n, k),
    entropy_values[i] = -log mu(B_n(x, 2^{-k})) / n and
    birkhoff_averages[i] = S_n phi(x) / n.
    """

    point_id: int
    grid: list[GridCell]
    values: list[float]
    entropy_values: list[float]
    birkhoff_averages: list[float]
    extrapolated_by_k: dict[int, float] = Field(default_factory=dict)  # value at the largest n
    tail_oscillation_by_k: dict[int, float] = Field(default_factory=dict)
    extrapolated: float = 0.0  # value at the finest cell

    @model_validator(mode="after")
    def _check_identity(self) -> "LocalPressureEstimate":
        if not self.grid:
            raise ValueError("estimate needs a nonempty grid")
        if not len(self.values) == len(self.entropy_values) == len(self.birkhoff_averages) == len(self.grid):
            raise ValueError("one value per grid cell is required")
        for value, h, average in zip(self.values, self.entropy_values, self.birkhoff_averages):
            if abs(value - (h + average)) > IDENTITY_TOL * max(1.0, abs(value)):
                raise ValueError(f"local pressure {value} != local entropy {h} + Birkhoff average {average}")
        return self

    def value_at(self, n: int, k: int) -> float:
        return self.values[self.grid.index((n, k))]

    def entropy_at(self, n: int, k: int) -> float:
        return self.entropy_values[self.grid.index((n, k))]


class TheoremAReport(BaseModel):
    """Batch verification of the local pressure formula.

    The sample mean of the local pressure at the finest grid cell is compared
    with target = entropy + integral; `sample_tolerance` is the CLT term
    3 std / sqrt(N) plus the boundary bias 2 C / n.
    """

    measure_id: str
    grid: list[GridCell]
    n: int
    k: int
    sample_mean: float
    sample_std: float
    target: float
    entropy: float
    integral: float
    sample_tolerance: float
    within_tolerance: bool
    invariance_defect: float  # mean |P(x; n, k) - P(fx; n, k)| at defect_cell
    defect_cell: GridCell
    aligned_invariance_defect: float  # mean |P(x; n, k) - P(fx; n - 1, k)|
    brin_katok: bool = False  # potential is zero, so the target is the entropy
    per_point: list[LocalPressureEstimate]

    @model_validator(mode="after")
    def _check_points(self) -> "TheoremAReport":
        if not self.per_point:
            raise ValueError("report needs at least one point")
        if any(estimate.grid != self.grid for estimate in self.per_point):
            raise ValueError("all estimates must share the report grid")
        return self

    @property
    def deviation(self) -> float:
        return abs(self.sample_mean - self.target)

    def values_at(self, n: int, k: int) -> np.ndarray:
        """Local pressure of every point at one cell, in point order."""
        return np.array([estimate.value_at(n, k) for estimate in self.per_point])

    def std_at(self, n: int, k: int) -> float:
        return float(np.std(self.values_at(n, k)))
