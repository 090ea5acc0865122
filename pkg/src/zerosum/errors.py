"""Exception types shared across the package."""


class ZerosumError(Exception):
    """Base class for all package errors."""


class ArityError(ZerosumError):
    """Element residue vector does not match the group's number of factors."""


class CapExceededError(ZerosumError):
    """Group cardinality exceeds the cap of an element-enumerating operation."""


class NonDivisorError(ZerosumError):
    """Attempted to remove a sequence that is not a subsequence."""


class UnsupportedShapeError(ZerosumError):
    """Group is not of the shape required by the operation."""


class WrongLengthError(ZerosumError):
    """Sequence does not have the length required by the problem."""


class ModeError(ZerosumError):
    """Equivalence mode is illegal for the given length set."""


class GuardError(ZerosumError):
    """Input exceeds a hard guard of a brute-force oracle."""


class BudgetExceededError(ZerosumError):
    """Search node budget exhausted.

    Carries the partially explored search so callers can inspect the best
    lower bound found so far or resume with a larger budget.
    """

    def __init__(self, message, search=None):
        super().__init__(message)
        self.search = search
