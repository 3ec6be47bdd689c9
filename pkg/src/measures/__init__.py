"""Exact invariant measures with cylinder masses, entropy, integrals and seeded sampling."""

from .markov import (
    axiom_defects,
    bernoulli,
    birkhoff_average_oracle,
    communicating_classes,
    cylinder_mass_table,
    cylinder_measure,
    entropy,
    integral,
    is_irreducible,
    log_cylinder_measure,
    markov,
    random_markov,
    stationary_vector,
)
from .models import AxiomDefects, MarkovMeasure, SampleBatch
from .sampling import sample, sample_point

__all__ = [
    "AxiomDefects",
    "MarkovMeasure",
    "SampleBatch",
    "axiom_defects",
    "bernoulli",
    "birkhoff_average_oracle",
    "communicating_classes",
    "cylinder_mass_table",
    "cylinder_measure",
    "entropy",
    "integral",
    "is_irreducible",
    "log_cylinder_measure",
    "markov",
    "random_markov",
    "sample",
    "sample_point",
    "stationary_vector",
]
