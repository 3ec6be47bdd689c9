"""Experiment configuration and report envelope models."""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import settings
from ..gibbs.models import EquilibriumVerdict, GibbsDiagnostics
from ..local_pressure.models import TheoremAReport
from ..measures.models import AxiomDefects, MarkovMeasure
from ..pressure.models import OracleRow, PressureReport, VariationalSweep


class SystemSection(BaseModel):
    """Shift space: alphabet size and row-major 0/1 transition matrix."""

    alphabet_size: int = Field(ge=1)
    transition: list[list[int]]
    name: str | None = None


class PotentialSection(BaseModel):
    """Potential of range r as a flat lexicographic table (all m^r words or admissible ones)."""

    range: int = Field(default=1, ge=1)
    table: list[float]


class BernoulliSection(BaseModel):
    kind: Literal["bernoulli"]
    probabilities: list[float]


class MarkovSection(BaseModel):
    kind: Literal["markov"]
    stochastic: list[list[float]]


class EquilibriumSection(BaseModel):
    kind: Literal["equilibrium"]


MeasureSection = Annotated[
    BernoulliSection | MarkovSection | EquilibriumSection, Field(discriminator="kind")
]


class EstimatorSection(BaseModel):
    n_grid: list[int] = Field(min_length=1)
    k: int = Field(default=0, ge=0)
    k_values: list[int] | None = None  # extra radii for the local pressure grid
    sample_count: int = Field(default=100, ge=1)
    capacity: int = Field(ge=1)
    seed: int = 0

    @property
    def all_k(self) -> list[int]:
        return sorted(set(self.k_values or []) | {self.k})


class TolerancesSection(BaseModel):
    slope_tol: float = Field(default_factory=lambda: settings.slope_tol, gt=0)
    const_bound: float = Field(default_factory=lambda: settings.const_bound, gt=1)
    eq_tol: float = Field(default_factory=lambda: settings.eq_tol, gt=0)


class ExperimentConfig(BaseModel):
    """One experiment; echoed into every report so the run can be repeated exactly."""

    name: str = "experiment"
    system: SystemSection
    potential: PotentialSection
    measure: MeasureSection | None = None
    estimator: EstimatorSection | None = None
    tolerances: TolerancesSection = Field(default_factory=TolerancesSection)
    oracle_n: list[int] = Field(default_factory=lambda: [4, 8, 12, 16])
    variational_count: int = Field(default=50, ge=0)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ExperimentConfig":
        m = self.system.alphabet_size
        if len(self.system.transition) != m or any(len(row) != m for row in self.system.transition):
            raise ValueError(f"transition must be a {m}x{m} matrix")
        if isinstance(self.measure, BernoulliSection) and len(self.measure.probabilities) != m:
            raise ValueError(f"bernoulli measure needs {m} probabilities")
        if isinstance(self.measure, MarkovSection) and (
            len(self.measure.stochastic) != m or any(len(row) != m for row in self.measure.stochastic)
        ):
            raise ValueError(f"markov measure needs a {m}x{m} stochastic matrix")
        if self.estimator is not None:
            needed = max(self.estimator.n_grid) + max(self.estimator.all_k) + self.potential.range - 1
            if self.estimator.capacity < needed:
                raise ValueError(
                    f"capacity {self.estimator.capacity} < max(n_grid) + k + range - 1 = {needed}"
                )
            if min(self.estimator.n_grid) < 1:
                raise ValueError("n_grid values must be positive")
        if any(n < 1 for n in self.oracle_n):
            raise ValueError("oracle_n values must be positive")
        return self


class PressureResult(BaseModel):
    kind: Literal["pressure"] = "pressure"
    report: PressureReport
    topological_entropy: float
    oracle: list[OracleRow]
    oracle_skipped: list[int] = Field(default_factory=list)  # n values over the word budget

    @property
    def oracle_gaps_decreasing(self) -> bool:
        gaps = [row.gap for row in self.oracle]
        return all(b <= a + 1e-15 for a, b in zip(gaps, gaps[1:]))


class EquilibriumResult(BaseModel):
    kind: Literal["equilibrium"] = "equilibrium"
    pressure: PressureReport
    measure: MarkovMeasure
    blocks: list[list[int]] | None = None  # symbols of the recoded system, if any
    entropy: float
    integral: float
    metric_pressure: float
    gap: float
    axioms: AxiomDefects
    variational: VariationalSweep


class LocalPressureResult(BaseModel):
    kind: Literal["local_pressure"] = "local_pressure"
    report: TheoremAReport


class GibbsCheckResult(BaseModel):
    """Diagnostics, plus a verdict when the Gibbs hypothesis is not rejected."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    kind: Literal["gibbs_check"] = "gibbs_check"
    diagnostics: GibbsDiagnostics
    verdict: EquilibriumVerdict | None = None
    p_top: float
    metric_pressure: float
    direct_gap: float


ResultPayload = Annotated[
    PressureResult | EquilibriumResult | LocalPressureResult | GibbsCheckResult,
    Field(discriminator="kind"),
]


class ReportEnvelope(BaseModel):
    """Output of one CLI invocation."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    command: str
    config: ExperimentConfig
    results: ResultPayload
    tool_version: str
    wall_time: float
