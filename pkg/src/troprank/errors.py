"""Exception hierarchy shared by all troprank modules."""


class TroprankError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(TroprankError):
    """The caller violated an interface contract (shapes, kinds, flags)."""


class DomainError(TroprankError):
    """A mathematical precondition does not hold for the given data."""


class InfeasibleConstraintsError(DomainError):
    """The constraint matrix admits no regular solution (a cycle with
    product above the semifield unit).

    Attributes:
        cycle: vertex indices of a violating cycle, first index repeated last.
        value: the cycle's tropical product (a Scalar, > one).
    """

    def __init__(self, message, cycle=None, value=None):
        super().__init__(message)
        self.cycle = tuple(cycle) if cycle is not None else None
        self.value = value
