"""Models for weak-Gibbs diagnostics and equilibrium verdicts."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

SANDWICH_SLACK = 1e-10


class GibbsVerdict(str, Enum):
    """Outcome of the Gibbs diagnostics for one radius."""

    GIBBS = "gibbs"  # delta_n bounded by const_bound
    WEAK_GIBBS = "weak_gibbs"  # log delta_n grows sub-linearly at every point
    REJECTED = "rejected"


class PointGibbsTrace(BaseModel):
    """log R_n(x) and log delta_n(x) = |log R_n(x)| along the n-grid for one point."""

    point_id: int
    log_ratios: list[float]
    log_deltas: list[float]
    slope: float  # least-squares slope of log delta_n over the upper half of the grid


class GibbsDiagnostics(BaseModel):
    """Gibbs ratios R_n(x) = mu(B_n(x, 2^{-k})) / exp(-P_top n + S_n phi(x)) over a batch."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    k: int
    p_top: float
    n_grid: list[int]
    slope_tol: float
    const_bound: float
    per_point: list[PointGibbsTrace]
    sup_log_delta: float
    sup_delta: float
    worst_point: int  # point with the largest |slope|
    worst_slope: float
    mean_slope: float
    rejecting_fraction: float  # share of points with |slope| > slope_tol
    verdict: GibbsVerdict

    @model_validator(mode="after")
    def _check_verdict(self) -> "GibbsDiagnostics":
        if not self.per_point:
            raise ValueError("diagnostics need at least one point")
        if any(d < 0 for trace in self.per_point for d in trace.log_deltas):
            raise ValueError("delta_n must be at least 1")
        if self.verdict == GibbsVerdict.GIBBS and self.sup_delta > self.const_bound:
            raise ValueError("gibbs verdict with sup delta above the constant bound")
        if self.verdict == GibbsVerdict.WEAK_GIBBS and abs(self.worst_slope) > self.slope_tol:
            raise ValueError("weak_gibbs verdict with a slope above tolerance")
        return self

    @property
    def slopes(self) -> np.ndarray:
        return np.array([trace.slope for trace in self.per_point])

    @property
    def accepted(self) -> bool:
        return self.verdict != GibbsVerdict.REJECTED


class SandwichEntry(BaseModel):
    """P_top - log delta_n / n <= local pressure <= P_top + log delta_n / n at one (x, n)."""

    point_id: int
    n: int
    lower: float
    middle: float
    upper: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.middle + SANDWICH_SLACK and self.middle <= self.upper + SANDWICH_SLACK


class EquilibriumVerdict(BaseModel):
    """Whether a measure that passed the Gibbs diagnostics is an equilibrium state.

    The exact route compares P_top with entropy + integral; the sampled
    route compares P_top with the batch mean of the local pressure at the
    largest n.
    """

    p_top: float
    metric_pressure: float
    gap: float  # p_top - metric_pressure
    eq_tol: float
    is_equilibrium: bool
    gibbs_verdict: GibbsVerdict
    k: int
    sandwich_trace: list[SandwichEntry]
    sampled_mean: float
    sampled_tolerance: float
    sampled_consistent: bool

    @model_validator(mode="after")
    def _check_verdict(self) -> "EquilibriumVerdict":
        if self.gap < -self.eq_tol:
            raise ValueError(f"metric pressure exceeds P_top by {-self.gap}")
        broken = [entry for entry in self.sandwich_trace if not entry.holds]
        if broken:
            raise ValueError(f"sandwich fails at point {broken[0].point_id}, n={broken[0].n}")
        return self
