"""Random search on the supremum side of the variational principle."""

import logging

import numpy as np

from ..measures.markov import random_markov
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from .equilibrium import equilibrium_measure, metric_pressure
from .models import VariationalSweep
from .recoding import block_recode
from .transfer import topological_pressure

logger = logging.getLogger(__name__)


def variational_sweep(
    sft: SubshiftOfFiniteType, phi: LocallyConstantPotential, count: int = 50, seed: int = 0
) -> VariationalSweep:
    """Compare metric pressures of random Markov measures with P_top.

    Every invariant measure has h + integral <= P_top; the equilibrium measure
    attains it. Random measures are Markov of order one on the original
    system; for potentials of range >= 3 the equilibrium value is computed on
    the block-recoded system.

    Args:
        sft: Primitive system
        phi: Potential
        count: Number of random Markov measures
        seed: Seed for the Dirichlet draws

    Returns:
        VariationalSweep (its validator enforces the inequality)
    """
    p_top = topological_pressure(sft, phi).value
    if phi.range > 2:
        system = block_recode(sft, phi)
        equilibrium_value = metric_pressure(equilibrium_measure(system.sft, system.phi), system.phi)
    else:
        equilibrium_value = metric_pressure(equilibrium_measure(sft, phi), phi)

    rng = np.random.default_rng(seed)
    random_values = [metric_pressure(random_markov(sft, rng), phi) for _ in range(count)]
    logger.info(
        "variational sweep: P_top=%.10f, equilibrium=%.10f, best of %d random=%.10f",
        p_top, equilibrium_value, count, max(random_values, default=float("nan")),
    )
    return VariationalSweep(
        p_top=p_top, equilibrium_value=equilibrium_value, random_values=random_values, seed=seed
    )
