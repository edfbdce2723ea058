"""Exception hierarchy shared by all modules.

The CLI maps :class:`ContractError` subclasses to exit code 2 and
:class:`AccuracyError` subclasses to exit code 3.
"""


class RealSpecError(Exception):
    """Base class for every error raised by this package."""


class ContractError(RealSpecError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(ContractError):
    """Argument outside the mathematical domain (e.g. a pole of Gamma)."""


class GradingError(ContractError):
    """Attempt to add graded values of different nonzero grades."""


class UnsupportedExactError(ContractError):
    """No exact evaluation path exists for this parameter combination."""


class AccuracyError(RealSpecError, ArithmeticError):
    """A numerical routine could not reach its requested accuracy."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConvergenceError(AccuracyError):
    """An iterative eigenvalue routine failed to converge."""
