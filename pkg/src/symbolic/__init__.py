"""Shift spaces, cylinders, dynamical balls and Birkhoff sums."""

from .core import (
    admissible_word_array,
    admissible_words,
    birkhoff_sum,
    distance,
    dynamical_ball_cylinder,
    dynamical_ball_members,
    is_admissible,
    point_from_symbols,
    shift,
)
from .models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType, Word
from .systems import (
    constant_potential,
    full_shift,
    golden_mean_shift,
    indicator_potential,
    potential_from_function,
    potential_from_table,
    shipped_examples,
    zero_potential,
)

__all__ = [
    "LocallyConstantPotential",
    "PointPrefix",
    "SubshiftOfFiniteType",
    "Word",
    "admissible_word_array",
    "admissible_words",
    "birkhoff_sum",
    "constant_potential",
    "distance",
    "dynamical_ball_cylinder",
    "dynamical_ball_members",
    "full_shift",
    "golden_mean_shift",
    "indicator_potential",
    "is_admissible",
    "point_from_symbols",
    "potential_from_function",
    "potential_from_table",
    "shift",
    "shipped_examples",
    "zero_potential",
]
