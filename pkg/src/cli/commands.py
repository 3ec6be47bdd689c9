"""Pipelines behind the CLI commands."""

import csv
import json
import logging
import math
import os
import tempfile
import time
from collections.abc import Callable
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from .. import __version__
from ..errors import ConfigError
from ..gibbs.corollary import metric_pressure_gap, verify_corollary_b
from ..gibbs.diagnostics import gibbs_diagnose
from ..gibbs.models import GibbsVerdict
from ..local_pressure.estimators import make_grid, verify_theorem_a
from ..measures.markov import axiom_defects, bernoulli, entropy, integral, markov
from ..measures.models import MarkovMeasure
from ..measures.sampling import sample
from ..pressure.equilibrium import equilibrium_measure
from ..pressure.models import RecodedSystem
from ..pressure.recoding import block_recode
from ..pressure.transfer import oracle_table, topological_entropy, topological_pressure
from ..pressure.variational import variational_sweep
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from ..symbolic.systems import potential_from_table
from .models import (
    BernoulliSection,
    EquilibriumResult,
    EquilibriumSection,
    EstimatorSection,
    ExperimentConfig,
    GibbsCheckResult,
    LocalPressureResult,
    MarkovSection,
    PressureResult,
    ReportEnvelope,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ["point_id", "n", "k", "value"]
AXIOM_WORD_BUDGET = 2**20


class Experiment(BaseModel):
    """Objects built from a config; measure-bearing runs use (sft, phi) of the measure."""

    model_config = ConfigDict(frozen=True)

    sft: SubshiftOfFiniteType
    phi: LocallyConstantPotential
    original_sft: SubshiftOfFiniteType
    original_phi: LocallyConstantPotential
    mu: MarkovMeasure | None = None
    recoded: RecodedSystem | None = None


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a JSON experiment config.

    Raises:
        ConfigError: If the file is missing, not JSON, or fails validation
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}") from e
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid config {path}:\n{e}") from e


def with_seed(config: ExperimentConfig, seed: int | None) -> ExperimentConfig:
    """Config with the estimator seed replaced (unchanged when seed is None)."""
    if seed is None:
        return config
    if config.estimator is None:
        raise ConfigError("--seed needs an estimator section")
    estimator = config.estimator.model_copy(update={"seed": seed})
    return config.model_copy(update={"estimator": estimator})


def build_experiment(config: ExperimentConfig, with_measure: bool = True) -> Experiment:
    """Build the system, potential and (optionally) the measure of a config.

    Equilibrium measures of potentials with range >= 3 live on the
    block-recoded system, and the experiment then runs there.

    Raises:
        ConfigError: If the objects fail validation
        PreconditionError: If a mathematical precondition fails (e.g. reducible, atomic)
    """
    try:
        sft = SubshiftOfFiniteType(
            alphabet_size=config.system.alphabet_size,
            transition=tuple(tuple(row) for row in config.system.transition),
            name=config.system.name,
        )
        phi = potential_from_table(sft, config.potential.range, config.potential.table)
    except (ValidationError, ValueError) as e:
        raise ConfigError(f"invalid system or potential: {e}") from e

    if not with_measure:
        return Experiment(sft=sft, phi=phi, original_sft=sft, original_phi=phi)
    if config.measure is None:
        raise ConfigError("this command needs a measure section")

    try:
        if isinstance(config.measure, BernoulliSection):
            mu = bernoulli(sft, config.measure.probabilities, label=f"{config.name}:bernoulli")
        elif isinstance(config.measure, MarkovSection):
            mu = markov(sft, config.measure.stochastic, label=f"{config.name}:markov")
        elif phi.range > 2:
            recoded = block_recode(sft, phi)
            mu = equilibrium_measure(recoded.sft, recoded.phi, label=f"{config.name}:equilibrium")
            return Experiment(
                sft=recoded.sft, phi=recoded.phi, original_sft=sft, original_phi=phi, mu=mu, recoded=recoded
            )
        else:
            mu = equilibrium_measure(sft, phi, label=f"{config.name}:equilibrium")
    except (ValidationError, ValueError) as e:
        raise ConfigError(f"invalid measure: {e}") from e
    return Experiment(sft=sft, phi=phi, original_sft=sft, original_phi=phi, mu=mu)


def _require_estimator(config: ExperimentConfig) -> EstimatorSection:
    if config.estimator is None:
        raise ConfigError("this command needs an estimator section")
    return config.estimator


def _envelope(command: str, config: ExperimentConfig, started: float, results) -> ReportEnvelope:
    return ReportEnvelope(
        command=command,
        config=config,
        results=results,
        tool_version=__version__,
        wall_time=time.perf_counter() - started,
    )


def cmd_pressure(config: ExperimentConfig, threads: int = 1) -> ReportEnvelope:
    """Topological pressure with the brute-force partition-function cross-check."""
    started = time.perf_counter()
    experiment = build_experiment(config, with_measure=False)
    report = topological_pressure(experiment.sft, experiment.phi)
    oracle_n = sorted(set(config.oracle_n))
    oracle = oracle_table(experiment.sft, experiment.phi, report.value, oracle_n)
    computed = {row.n for row in oracle}
    results = PressureResult(
        report=report,
        topological_entropy=topological_entropy(experiment.sft),
        oracle=oracle,
        oracle_skipped=[n for n in oracle_n if n not in computed],
    )
    return _envelope("pressure", config, started, results)


def _axiom_length(alphabet_size: int) -> int:
    if alphabet_size == 1:
        return 10
    # exhaustive over m^L words
    return max(1, min(10, int(math.log(AXIOM_WORD_BUDGET) / math.log(alphabet_size))))


def cmd_equilibrium(config: ExperimentConfig, threads: int = 1) -> ReportEnvelope:
    """Equilibrium measure of the configured potential with the variational check."""
    started = time.perf_counter()
    if config.measure is None or config.measure.kind != "equilibrium":
        if config.measure is not None:
            logger.warning("equilibrium command ignores the configured %s measure", config.measure.kind)
        config = config.model_copy(update={"measure": EquilibriumSection(kind="equilibrium")})
    experiment = build_experiment(config)
    mu = experiment.mu
    pressure = topological_pressure(experiment.original_sft, experiment.original_phi)
    h = entropy(mu)
    phi_integral = integral(mu, experiment.phi)
    seed = config.estimator.seed if config.estimator is not None else 0
    results = EquilibriumResult(
        pressure=pressure,
        measure=mu,
        blocks=[list(block) for block in experiment.recoded.blocks] if experiment.recoded else None,
        entropy=h,
        integral=phi_integral,
        metric_pressure=h + phi_integral,
        gap=pressure.value - (h + phi_integral),
        axioms=axiom_defects(mu, _axiom_length(experiment.sft.alphabet_size)),
        variational=variational_sweep(
            experiment.original_sft, experiment.original_phi, config.variational_count, seed
        ),
    )
    return _envelope("equilibrium", config, started, results)


def cmd_local_pressure(config: ExperimentConfig, threads: int = 1) -> ReportEnvelope:
    """Local pressure over a sampled batch against entropy + integral."""
    started = time.perf_counter()
    estimator = _require_estimator(config)
    experiment = build_experiment(config)
    batch = sample(experiment.mu, estimator.sample_count, estimator.capacity, estimator.seed, threads)
    grid = make_grid(estimator.n_grid, estimator.all_k)
    report = verify_theorem_a(experiment.mu, experiment.sft, experiment.phi, batch, grid, threads)
    return _envelope("local-pressure", config, started, LocalPressureResult(report=report))


def cmd_gibbs_check(config: ExperimentConfig, threads: int = 1) -> ReportEnvelope:
    """Gibbs diagnostics, then the equilibrium verdict unless the diagnostics reject."""
    started = time.perf_counter()
    estimator = _require_estimator(config)
    if len(set(estimator.n_grid)) < 2:
        raise ConfigError("gibbs-check needs at least two distinct n values in estimator.n_grid")
    experiment = build_experiment(config)
    mu, sft, phi = experiment.mu, experiment.sft, experiment.phi
    tolerances = config.tolerances

    p_top, metric, gap = metric_pressure_gap(mu, sft, phi)
    batch = sample(mu, estimator.sample_count, estimator.capacity, estimator.seed, threads)
    diagnostics = gibbs_diagnose(
        mu, sft, phi, p_top, batch, estimator.n_grid, estimator.k,
        slope_tol=tolerances.slope_tol, const_bound=tolerances.const_bound, threads=threads,
    )
    verdict = None
    if diagnostics.verdict != GibbsVerdict.REJECTED:
        verdict = verify_corollary_b(
            mu, sft, phi, batch, estimator.n_grid, estimator.k,
            eq_tol=tolerances.eq_tol, diagnostics=diagnostics,
        )
    else:
        logger.info("Gibbs hypothesis rejected; reporting the direct gap %.6f only", gap)
    results = GibbsCheckResult(
        diagnostics=diagnostics, verdict=verdict, p_top=p_top, metric_pressure=metric, direct_gap=gap
    )
    return _envelope("gibbs-check", config, started, results)


COMMANDS: dict[str, Callable[[ExperimentConfig, int], ReportEnvelope]] = {
    "pressure": cmd_pressure,
    "equilibrium": cmd_equilibrium,
    "local-pressure": cmd_local_pressure,
    "gibbs-check": cmd_gibbs_check,
}


def results_payload(envelope: ReportEnvelope) -> str:
    """Serialized results, the part of a report that is reproducible byte for byte."""
    return envelope.results.model_dump_json()


def csv_rows(envelope: ReportEnvelope) -> list[tuple[int, int, int, float]]:
    """Per-point grid values: local pressure, or log delta_n for Gibbs checks."""
    results = envelope.results
    if results.kind == "local_pressure":
        return [
            (estimate.point_id, n, k, value)
            for estimate in results.report.per_point
            for (n, k), value in zip(estimate.grid, estimate.values)
        ]
    if results.kind == "gibbs_check":
        k = results.diagnostics.k
        return [
            (trace.point_id, n, k, value)
            for trace in results.diagnostics.per_point
            for n, value in zip(results.diagnostics.n_grid, trace.log_deltas)
        ]
    logger.warning("%s reports have no per-point grid; the CSV holds only the header", envelope.command)
    return []


def _atomic_write(path: str | Path, write: Callable[[object], None]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            write(handle)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write_report(envelope: ReportEnvelope, path: str | Path) -> None:
    """Write the envelope as indented JSON, atomically."""
    _atomic_write(path, lambda handle: handle.write(envelope.model_dump_json(indent=2) + "\n"))


def write_csv(envelope: ReportEnvelope, path: str | Path) -> None:
    """Write the per-point grid with header point_id,n,k,value, atomically."""

    def write(handle) -> None:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        writer.writerows((point_id, n, k, repr(value)) for point_id, n, k, value in csv_rows(envelope))

    _atomic_write(path, write)
