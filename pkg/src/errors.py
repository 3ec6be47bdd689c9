"""Exception hierarchy.

`ConfigError` covers malformed input; everything derived from
`PreconditionError` means a mathematical hypothesis failed. The CLI maps the
two families to exit codes 2 and 3.
"""


class LocalPressureError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(LocalPressureError):
    """Experiment configuration is malformed or inconsistent."""


class PreconditionError(LocalPressureError):
    """A mathematical precondition of an operation does not hold."""


class CapacityError(PreconditionError):
    """An operation needs coordinates beyond a point prefix's capacity."""

    def __init__(self, needed: int, capacity: int, what: str = "operation"):
        self.needed = needed
        self.capacity = capacity
        super().__init__(f"{what} needs {needed} coordinates but the point prefix has capacity {capacity}")


class ReducibleError(PreconditionError):
    """Matrix is not irreducible."""

    def __init__(self, classes: list[list[int]]):
        self.classes = classes
        super().__init__(f"matrix is reducible; communicating classes: {classes}")


class ConvergenceError(PreconditionError):
    """Perron solver did not converge or the matrix is not primitive."""


class SupportError(PreconditionError):
    """Dynamical ball has zero measure."""

    def __init__(self, detail: str = ""):
        message = "point outside measure support"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class GibbsHypothesisError(PreconditionError):
    """Weak-Gibbs diagnostics rejected the measure, so no equilibrium verdict is issued."""
