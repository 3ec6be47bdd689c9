"""Equilibrium (RPF) measures and metric pressure."""

import logging

import numpy as np

from ..errors import PreconditionError
from ..measures.markov import entropy, integral
from ..measures.models import MarkovMeasure
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from .transfer import perron_data, transfer_matrix

logger = logging.getLogger(__name__)


def equilibrium_measure(
    sft: SubshiftOfFiniteType, phi: LocallyConstantPotential, label: str | None = None
) -> MarkovMeasure:
    """Gibbs equilibrium state of a potential of range 1 or 2.

    With lambda, h, nu the Perron root and right/left eigenvectors of the
    transfer matrix L:

        Q[i][j] = L[i][j] * h[j] / (lambda * h[i]),   pi[i] ~ nu[i] * h[i]

    The result satisfies entropy + integral = P_top up to rounding.

    Args:
        sft: Primitive system
        phi: Potential of range 1 or 2 (use block_recode for longer ranges)
        label: Measure label (default: "equilibrium[<system name>]")

    Raises:
        ReducibleError: If the system is reducible
        ConvergenceError: If the system is periodic
        PreconditionError: If the range exceeds 2, or the system is a single periodic orbit
    """
    if phi.range > 2:
        raise PreconditionError(f"equilibrium measure needs range <= 2, got {phi.range}; block-recode first")
    L = transfer_matrix(sft, phi)
    data = perron_data(L)
    h = np.array(data.right)
    nu = np.array(data.left)

    Q = L * h[None, :] / (data.eigenvalue * h[:, None])
    Q = Q / Q.sum(axis=1, keepdims=True)
    pi = nu * h
    pi = pi / pi.sum()

    return MarkovMeasure(
        sft=sft,
        stochastic=tuple(map(tuple, Q.tolist())),
        stationary=tuple(pi.tolist()),
        label=label or f"equilibrium[{sft.name or 'sft'}]",
    )


def metric_pressure(mu: MarkovMeasure, phi: LocallyConstantPotential) -> float:
    """h_mu + integral of phi, the quantity equilibrium states maximize."""
    return entropy(mu) + integral(mu, phi)
