"""Higher-block recoding of range-r potentials to range 2."""

import logging

import numpy as np

from ..symbolic.core import admissible_word_array
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from .models import RecodedSystem

logger = logging.getLogger(__name__)


def block_recode(sft: SubshiftOfFiniteType, phi: LocallyConstantPotential) -> RecodedSystem:
    """Recode a range-r potential (r >= 3) on the system of admissible (r-1)-blocks.

    Block u may be followed by block v when v continues u by one symbol
    (u[1:] == v[:-1]) and the glued r-word u + v[-1] is admissible. The new
    potential is psi(u, v) = phi(u + v[-1]); it has range 2 and the same
    pressure and equilibrium state as phi.

    Args:
        sft: Original system
        phi: Potential of range r >= 3

    Returns:
        RecodedSystem holding both presentations and the block list
    """
    if phi.range < 3:
        raise ValueError(f"block recoding needs range >= 3, got {phi.range}")
    if phi.alphabet_size != sft.alphabet_size:
        raise ValueError("potential and system use different alphabets")

    blocks = admissible_word_array(sft, phi.range - 1)
    size = len(blocks)
    transition = np.zeros((size, size), dtype=np.int64)
    table = np.zeros((size, size))
    for i, u in enumerate(blocks):
        for j, v in enumerate(blocks):
            if np.array_equal(u[1:], v[:-1]) and sft.allows(int(u[-1]), int(v[-1])):
                transition[i, j] = 1
                table[i, j] = phi.value(np.append(u, v[-1]).tolist())

    logger.debug(
        "recoded range-%d potential on %d blocks with %d transitions",
        phi.range, size, int(transition.sum()),
    )
    recoded_sft = SubshiftOfFiniteType(
        alphabet_size=size,
        transition=tuple(map(tuple, transition.tolist())),
        name=f"{sft.name or 'sft'}[{phi.range - 1}-blocks]",
    )
    return RecodedSystem(
        original=sft,
        original_potential=phi,
        sft=recoded_sft,
        phi=LocallyConstantPotential(alphabet_size=size, range=2, table=tuple(table.ravel().tolist())),
        blocks=tuple(tuple(int(s) for s in block) for block in blocks),
    )
