"""Shipped example systems and potential constructors."""

import math
from collections.abc import Callable, Sequence

from .core import admissible_word_array
from .models import LocallyConstantPotential, SubshiftOfFiniteType


def full_shift(m: int = 2) -> SubshiftOfFiniteType:
    """Full shift on m symbols."""
    return SubshiftOfFiniteType(
        alphabet_size=m, transition=tuple((1,) * m for _ in range(m)), name=f"full-{m}-shift"
    )


def golden_mean_shift() -> SubshiftOfFiniteType:
    """Binary sequences with no two consecutive 1s."""
    return SubshiftOfFiniteType(alphabet_size=2, transition=((1, 1), (1, 0)), name="golden-mean")


def constant_potential(sft: SubshiftOfFiniteType, c: float, r: int = 1) -> LocallyConstantPotential:
    return LocallyConstantPotential(
        alphabet_size=sft.alphabet_size, range=r, table=(float(c),) * sft.alphabet_size**r
    )


def zero_potential(sft: SubshiftOfFiniteType, r: int = 1) -> LocallyConstantPotential:
    return constant_potential(sft, 0.0, r)


def indicator_potential(
    sft: SubshiftOfFiniteType, symbol: int = 1, beta: float = 1.0
) -> LocallyConstantPotential:
    """phi(x) = beta * 1[x_0 == symbol]."""
    sft.check_symbols([symbol])
    table = tuple(beta if s == symbol else 0.0 for s in range(sft.alphabet_size))
    return LocallyConstantPotential(alphabet_size=sft.alphabet_size, range=1, table=table)


def potential_from_function(
    sft: SubshiftOfFiniteType, r: int, func: Callable[[tuple[int, ...]], float]
) -> LocallyConstantPotential:
    """Tabulate a function of the first r symbols (all words, lexicographic order)."""
    m = sft.alphabet_size
    table = []
    for index in range(m**r):
        digits = []
        for _ in range(r):
            index, digit = divmod(index, m)
            digits.append(digit)
        table.append(float(func(tuple(reversed(digits)))))
    return LocallyConstantPotential(alphabet_size=m, range=r, table=tuple(table))


def potential_from_table(
    sft: SubshiftOfFiniteType, r: int, values: Sequence[float]
) -> LocallyConstantPotential:
    """Build a potential of range r from a flat table in lexicographic word order.

    The table may list either every word of length r or only the admissible
    ones; missing (inadmissible) entries are stored as 0.0.

    Raises:
        ValueError: If the table length matches neither convention
    """
    m = sft.alphabet_size
    if r < 1:
        raise ValueError("potential range must be at least 1")
    if len(values) == m**r:
        return LocallyConstantPotential(alphabet_size=m, range=r, table=tuple(map(float, values)))
    words = admissible_word_array(sft, r)
    if len(words) == 0:
        raise ValueError("system has no admissible words of the potential's range")
    if len(values) != len(words):
        raise ValueError(
            f"potential table has {len(values)} values; expected {m**r} (all words) "
            f"or {len(words)} (admissible words)"
        )
    table = [0.0] * m**r
    powers = [m ** (r - 1 - i) for i in range(r)]
    for row, value in zip(words.tolist(), values):
        table[sum(s * p for s, p in zip(row, powers))] = float(value)
    return LocallyConstantPotential(alphabet_size=m, range=r, table=tuple(table))


def shipped_examples() -> list[tuple[str, SubshiftOfFiniteType, LocallyConstantPotential]]:
    """Example (system, potential) pairs used by the self-test and the test suite."""
    full2 = full_shift(2)
    full3 = full_shift(3)
    golden = golden_mean_shift()
    return [
        ("full-2 / zero", full2, zero_potential(full2)),
        ("full-2 / indicator", full2, indicator_potential(full2)),
        ("full-3 / range-1", full3, potential_from_table(full3, 1, [0.0, 0.5, -0.3])),
        ("golden-mean / zero", golden, zero_potential(golden)),
        (
            "golden-mean / range-2",
            golden,
            potential_from_function(golden, 2, lambda w: 0.4 * w[0] - 0.2 * w[1] + 0.1 * (w[0] == w[1])),
        ),
        (
            "full-2 / log-table range-2",
            full2,
            potential_from_table(full2, 2, [math.log(v) for v in (0.3, 0.9, 0.6, 0.2)]),
        ),
    ]
