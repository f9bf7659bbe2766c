"""Exception types shared across the toolkit."""


class QCQError(Exception):
    """Base class for all toolkit errors.

    ``stage`` is filled in by the design pipeline so callers can tell which
    step failed.
    """

    stage: str | None = None


class InvalidNetworkError(QCQError, ValueError):
    """Malformed or unphysical capacitance network."""


class NumericalFailureError(QCQError, ArithmeticError):
    """Ill-conditioned matrix, non-finite result or solver breakdown."""


class DegenerateError(QCQError, ValueError):
    """Quantity undefined at this point (pole, zero coupling, ...)."""


class DomainError(QCQError, ValueError):
    """Argument outside the supported domain."""


class InfeasibleDesignError(QCQError):
    """No physical design satisfies the requested targets.

    ``best_residual`` is the smallest residual norm seen by the solver,
    or ``None`` when the targets were rejected before solving.
    """

    def __init__(self, message: str, best_residual: float | None = None):
        super().__init__(message)
        self.best_residual = best_residual
