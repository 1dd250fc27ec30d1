"""Exception types shared across the package."""


class SchlichtError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SchlichtError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(SchlichtError, ArithmeticError):
    """A denominator of a geometric functional vanished (zero guard tripped)."""

    def __init__(self, message: str, point: complex):
        super().__init__(message)
        self.point = point


class UnsupportedError(SchlichtError):
    """The requested operation is not defined for the given object."""


class ContractError(SchlichtError):
    """A precondition of an implication (e.g. class membership) does not hold."""
