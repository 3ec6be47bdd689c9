"""Seeded sampling of point prefixes from Markov measures.

Point i of a batch is drawn from its own generator seeded with
SeedSequence(seed, spawn_key=(i,)), so a point depends only on (seed, i)
and batches can be generated in parallel.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..symbolic.models import PointPrefix, Word
from .models import MarkovMeasure, SampleBatch

logger = logging.getLogger(__name__)


def _cdf(weights: np.ndarray) -> np.ndarray:
    """CDF along the last axis, pinned to 1.0 from the last charged symbol on."""
    cumulative = np.cumsum(np.atleast_2d(weights), axis=1)
    for i, row in enumerate(np.atleast_2d(weights)):
        cumulative[i, np.flatnonzero(row > 0)[-1]:] = 1.0
    return cumulative


def sample_point(mu: MarkovMeasure, capacity: int, seed: int, index: int) -> PointPrefix:
    """Draw the point with the given index of the batch defined by seed."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    rows = _cdf(mu.Q)
    pi_cdf = _cdf(mu.pi)[0]

    uniforms = rng.random(capacity)
    symbols = np.empty(capacity, dtype=np.int64)
    symbols[0] = np.searchsorted(pi_cdf, uniforms[0], side="right")
    for i in range(1, capacity):
        symbols[i] = np.searchsorted(rows[symbols[i - 1]], uniforms[i], side="right")
    return PointPrefix(word=Word(symbols=tuple(symbols.tolist())))


def sample(mu: MarkovMeasure, count: int, capacity: int, seed: int, threads: int = 1) -> SampleBatch:
    """Sample i.i.d. point prefixes: first symbol from pi, then rows of Q.

    Args:
        mu: Measure to sample from
        count: Number of points (>= 1)
        capacity: Length of each prefix (>= 1)
        seed: Batch seed; identical seeds give identical batches
        threads: Worker threads (ordering of the result never depends on it)

    Returns:
        SampleBatch with points in index order
    """
    if count < 1 or capacity < 1:
        raise ValueError("count and capacity must be at least 1")
    logger.info("sampling %d points of capacity %d from %s (seed=%d)", count, capacity, mu.label, seed)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(lambda i: sample_point(mu, capacity, seed, i), range(count)))
    else:
        points = [sample_point(mu, capacity, seed, i) for i in range(count)]
    return SampleBatch(sft=mu.sft, points=points, seed=seed, measure_id=mu.label, capacity=capacity)
