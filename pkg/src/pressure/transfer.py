"""Transfer matrices, the Perron solver and topological pressure.

For a potential of range 1 the weight sits on the source symbol,
L[i][j] = A[i][j] * exp(phi(i)); for range 2, L[i][j] = A[i][j] * exp(phi(i, j)).
Longer ranges are block-recoded to range 2 first.
"""

import logging
import math

import numpy as np
from scipy.special import logsumexp

from ..config import settings
from ..errors import ConvergenceError, PreconditionError, ReducibleError
from ..measures.markov import communicating_classes
from ..symbolic.core import admissible_word_array
from ..symbolic.models import LocallyConstantPotential, SubshiftOfFiniteType
from ..symbolic.systems import zero_potential
from .models import OracleRow, PerronData, PressureReport
from .recoding import block_recode

logger = logging.getLogger(__name__)


def _check_alphabet(sft: SubshiftOfFiniteType, phi: LocallyConstantPotential) -> None:
    if phi.alphabet_size != sft.alphabet_size:
        raise ValueError(
            f"potential over {phi.alphabet_size} symbols used on a system with {sft.alphabet_size}"
        )


def transfer_matrix(sft: SubshiftOfFiniteType, phi: LocallyConstantPotential) -> np.ndarray:
    """Weighted transition matrix of a potential of range 1 or 2.

    Raises:
        PreconditionError: If the potential has range > 2 (block-recode first)
    """
    _check_alphabet(sft, phi)
    m = sft.alphabet_size
    A = sft.matrix.astype(float)
    if phi.range == 1:
        return A * np.exp(phi.values)[:, None]
    if phi.range == 2:
        return A * np.exp(phi.values.reshape(m, m))
    raise PreconditionError(f"transfer matrix needs range <= 2, got {phi.range}; block-recode first")


def _boolean_power(pattern: np.ndarray, exponent: int) -> np.ndarray:
    """Support of pattern**exponent by repeated squaring."""
    result = np.eye(pattern.shape[0], dtype=np.int64)
    base = pattern.astype(np.int64)
    while exponent:
        if exponent & 1:
            result = np.minimum(result @ base, 1)
        base = np.minimum(base @ base, 1)
        exponent >>= 1
    return result


def is_primitive(matrix: np.ndarray) -> bool:
    """Check whether some power of a non-negative matrix is strictly positive.

    An m x m primitive matrix has a positive power at exponent m^2 - 2m + 2
    (Wielandt), so one boolean power decides it.
    """
    pattern = np.asarray(matrix) > 0
    m = pattern.shape[0]
    return bool(np.all(_boolean_power(pattern, max(1, m * m - 2 * m + 2)) > 0))


def _power_iteration(matrix: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, int, float]:
    v = np.ones(matrix.shape[0])
    eigenvalue, residual = 0.0, math.inf
    for iteration in range(1, max_iter + 1):
        w = matrix @ v
        eigenvalue = float(w.max())
        v = w / eigenvalue
        w = matrix @ v
        eigenvalue = float(w.max())
        residual = float(np.max(np.abs(w - eigenvalue * v)) / eigenvalue)
        if residual <= tol:
            return eigenvalue, v, iteration, residual
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations (residual {residual:.2e})"
    )


def perron_data(matrix: np.ndarray, tol: float | None = None, max_iter: int | None = None) -> PerronData:
    """Perron root and positive eigenvectors of a primitive non-negative matrix.

    Args:
        matrix: Square non-negative matrix
        tol: Relative residual ||Lv - lambda v|| / lambda to stop at (default: settings)
        max_iter: Iteration cap (default: settings)

    Returns:
        PerronData with right eigenvector max-normalized and left . right = 1

    Raises:
        ReducibleError: If the matrix is reducible
        ConvergenceError: If it is irreducible but periodic, or the iteration stalls
    """
    L = np.asarray(matrix, dtype=float)
    tol = settings.perron_tol if tol is None else tol
    max_iter = settings.perron_max_iter if max_iter is None else max_iter

    classes = communicating_classes(L)
    if len(classes) > 1:
        raise ReducibleError(classes)
    if not is_primitive(L):
        raise ConvergenceError("matrix is irreducible but periodic; the Perron solver needs a primitive matrix")

    eigenvalue, right, right_iter, right_res = _power_iteration(L, tol, max_iter)
    _, left, left_iter, left_res = _power_iteration(L.T, tol, max_iter)
    left = left / (left @ right)
    logger.debug(
        "Perron root %.15g after %d/%d iterations (residuals %.1e, %.1e)",
        eigenvalue, right_iter, left_iter, right_res, left_res,
    )
    return PerronData(
        eigenvalue=eigenvalue,
        right=tuple(right.tolist()),
        left=tuple(left.tolist()),
        iterations=max(right_iter, left_iter),
        residual=max(right_res, left_res),
    )


def topological_pressure(sft: SubshiftOfFiniteType, phi: LocallyConstantPotential) -> PressureReport:
    """Topological pressure of a locally constant potential.

    Potentials of range >= 3 are block-recoded first; the eigenvectors in
    the report then live on the recoded alphabet.

    Raises:
        ReducibleError: If the system is reducible
        ConvergenceError: If the system is periodic
    """
    _check_alphabet(sft, phi)
    recoded = phi.range > 2
    if recoded:
        system = block_recode(sft, phi)
        sft, phi = system.sft, system.phi

    data = perron_data(transfer_matrix(sft, phi))
    report = PressureReport(
        value=math.log(data.eigenvalue),
        perron_eigenvalue=data.eigenvalue,
        right_eigvec=list(data.right),
        left_eigvec=list(data.left),
        iterations=data.iterations,
        residual=data.residual,
        alphabet_size=sft.alphabet_size,
        recoded=recoded,
    )
    logger.info("P_top = %.12f on %s (%d symbols)", report.value, sft.name or "sft", sft.alphabet_size)
    return report


def topological_entropy(sft: SubshiftOfFiniteType) -> float:
    """h_top, the pressure of the zero potential."""
    return topological_pressure(sft, zero_potential(sft)).value


def log_partition_function_oracle(
    sft: SubshiftOfFiniteType, phi: LocallyConstantPotential, n: int, max_words: int | None = None
) -> float:
    """log Z_n by enumerating every admissible word of length n.

    Each word contributes exp of the sum of phi over its windows of length r
    that fit inside the word (n - r + 1 of them), so the boundary terms that
    would need coordinates >= n are dropped.

    Raises:
        PreconditionError: If there are more than max_words words (default: settings)
    """
    _check_alphabet(sft, phi)
    if n < 1:
        raise ValueError("n must be positive")
    budget = settings.oracle_max_words if max_words is None else max_words
    words = admissible_word_array(sft, n, max_words=budget)
    if n >= phi.range:
        exponents = phi.values[phi.window_codes(words)].sum(axis=1)
    else:
        exponents = np.zeros(len(words))
    return float(logsumexp(exponents))


def partition_function_oracle(
    sft: SubshiftOfFiniteType, phi: LocallyConstantPotential, n: int, max_words: int | None = None
) -> float:
    """Z_n, the sum over admissible n-words of exp(S_n phi) truncated to the word."""
    return math.exp(log_partition_function_oracle(sft, phi, n, max_words))


def oracle_table(
    sft: SubshiftOfFiniteType,
    phi: LocallyConstantPotential,
    p_top: float,
    n_values: list[int],
    max_words: int | None = None,
) -> list[OracleRow]:
    """Oracle rows for each n in turn, stopping at the first n over the enumeration budget."""
    budget = settings.oracle_max_words if max_words is None else max_words
    rows = []
    for n in n_values:
        try:
            log_z = log_partition_function_oracle(sft, phi, n, budget)
        except PreconditionError:
            logger.warning("oracle stopped at n=%d: more than %d words", n, budget)
            break
        rows.append(
            OracleRow(
                n=n,
                word_count=int(np.linalg.matrix_power(sft.matrix, n - 1).sum()),
                log_z=log_z,
                normalized=log_z / n,
                gap=abs(log_z / n - p_top),
            )
        )
    return rows
