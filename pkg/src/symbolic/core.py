"""Shift map, cylinders, dynamical balls and Birkhoff sums.

The metric on one-sided sequence space is d(u, v) = 2^{-min{i : u_i != v_i}},
so d(u, v) < 2^{-k} exactly when u and v agree on coordinates 0..k. With
radius eps = 2^{-k} the dynamical ball B_n(x, eps) is therefore the cylinder
of the first n + k symbols of x.
"""

import logging
from collections.abc import Iterator, Sequence

import numpy as np

from ..errors import CapacityError, PreconditionError
from .models import LocallyConstantPotential, PointPrefix, SubshiftOfFiniteType, Word

logger = logging.getLogger(__name__)


def is_admissible(sft: SubshiftOfFiniteType, w: Word) -> bool:
    """Check whether every consecutive pair of a word is allowed.

    Args:
        sft: Shift space
        w: Word to test (the empty word is admissible)

    Returns:
        True if the word is admissible

    Raises:
        ValueError: If a symbol lies outside the alphabet
    """
    sft.check_symbols(w.symbols)
    if w.length < 2:
        return True
    s = w.array
    return bool(np.all(sft.matrix[s[:-1], s[1:]] == 1))


def point_from_symbols(sft: SubshiftOfFiniteType, symbols: Sequence[int]) -> PointPrefix:
    """Build a point prefix, checking that it is admissible.

    Raises:
        ValueError: If a symbol is out of range or the word is inadmissible
    """
    word = Word.of(symbols)
    if not is_admissible(sft, word):
        raise ValueError(f"point prefix {list(word.symbols[:20])}... is not admissible")
    return PointPrefix(word=word)


def shift(x: PointPrefix, k: int) -> PointPrefix:
    """Apply the shift map k times: drop the first k symbols.

    Raises:
        CapacityError: If k exceeds the capacity of x
    """
    if k < 0:
        raise ValueError("shift count must be non-negative")
    if k > x.capacity:
        raise CapacityError(k, x.capacity, "shift")
    return PointPrefix(word=Word(symbols=x.symbols[k:]))


def dynamical_ball_cylinder(n: int, k: int, x: PointPrefix) -> Word:
    """Cylinder word equal to the dynamical ball B_n(x, 2^{-k}).

    Args:
        n: Number of iterates (n >= 1)
        k: Radius exponent, eps = 2^{-k}
        x: Center of the ball

    Returns:
        The length-(n + k) prefix of x

    Raises:
        CapacityError: If n + k exceeds the capacity of x
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if n + k > x.capacity:
        raise CapacityError(n + k, x.capacity, f"dynamical ball (n={n}, k={k})")
    return Word(symbols=x.symbols[: n + k])


def birkhoff_sum(phi: LocallyConstantPotential, x: PointPrefix, n: int) -> float:
    """Compute S_n phi(x) = sum_{i<n} phi(x_i, ..., x_{i+r-1}).

    Raises:
        CapacityError: If n + r - 1 exceeds the capacity of x
    """
    if n < 1:
        raise ValueError("n must be positive")
    needed = n + phi.range - 1
    if needed > x.capacity:
        raise CapacityError(needed, x.capacity, f"Birkhoff sum (n={n}, r={phi.range})")
    codes = phi.window_codes(x.array[:needed])
    return float(np.sum(phi.values[codes]))


def admissible_word_array(sft: SubshiftOfFiniteType, n: int, max_words: int | None = None) -> np.ndarray:
    """All admissible words of length n, one per row, in lexicographic order.

    Args:
        sft: Shift space
        n: Word length (n >= 0)
        max_words: Optional enumeration budget

    Returns:
        Integer array of shape (count, n)

    Raises:
        PreconditionError: If the number of words would exceed max_words
    """
    if n < 0:
        raise ValueError("word length must be non-negative")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    matrix = sft.matrix
    words = np.arange(sft.alphabet_size, dtype=np.int64)[:, None]
    for _ in range(n - 1):
        successors = matrix[words[:, -1]]
        count = int(successors.sum())
        if max_words is not None and count > max_words:
            raise PreconditionError(
                f"enumeration budget exceeded: more than {max_words} admissible words of length {n}"
            )
        rows, symbols = np.nonzero(successors)
        words = np.column_stack([words[rows], symbols])
    return words


def admissible_words(sft: SubshiftOfFiniteType, n: int) -> Iterator[Word]:
    """Iterate over admissible words of length n in lexicographic order."""
    for row in admissible_word_array(sft, n):
        yield Word.of(row.tolist())


def distance(u: Sequence[int], v: Sequence[int]) -> float:
    """Metric 2^{-min{i : u_i != v_i}} on the compared coordinates.

    Returns 0.0 when the sequences agree on every coordinate both of them have.
    """
    for i, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return 2.0**-i
    return 0.0


def dynamical_ball_members(
    sft: SubshiftOfFiniteType, x: PointPrefix, n: int, k: int, length: int | None = None
) -> list[Word]:
    """Brute-force the dynamical ball from its metric definition.

    Enumerates admissible words y of the given length and keeps those with
    d(f^i x, f^i y) < 2^{-k} for 0 <= i <= n - 1.

    Args:
        sft: Shift space
        x: Center of the ball
        n: Number of iterates
        k: Radius exponent
        length: Length of the enumerated words (default: n + k)

    Returns:
        Members of the ball, in lexicographic order
    """
    length = n + k if length is None else length
    if length < n + k:
        raise ValueError("words shorter than n + k cannot resolve the ball")
    if length > x.capacity:
        raise CapacityError(length, x.capacity, "ball enumeration")
    center = x.symbols[:length]
    radius = 2.0**-k
    members = []
    for row in admissible_word_array(sft, length):
        y = row.tolist()
        if all(distance(center[i:], y[i:]) < radius for i in range(n)):
            members.append(Word.of(y))
    return members
