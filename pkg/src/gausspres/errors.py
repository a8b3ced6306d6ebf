"""Exception types raised across the package."""


class GaussPresError(Exception):
    """Base class for all package errors."""


class OddArgument(GaussPresError, ValueError):
    pass


class EvenArgument(GaussPresError, ValueError):
    pass


class NotAUnit(GaussPresError, ValueError):
    pass


class DimensionMismatch(GaussPresError, ValueError):
    pass


class NotUnitary(GaussPresError, ValueError):
    pass


class IndexOutOfRange(GaussPresError, IndexError):
    pass


class IndicesNotOrdered(GaussPresError, ValueError):
    pass


class WordSyntaxError(GaussPresError, ValueError):
    """Raised when word text does not match the token grammar."""


class IdentityMatrix(GaussPresError, ValueError):
    """The identity has no outgoing normal edge."""


class NoMatchAtPosition(GaussPresError, ValueError):
    pass


class BudgetExhausted(GaussPresError, RuntimeError):
    """A bounded search ran out of budget. This is inconclusive, not a refutation."""

    def __init__(self, message: str, unmet=None):
        super().__init__(message)
        self.unmet = unmet


class NotBasicGenerator(GaussPresError, ValueError):
    pass


IdentityState = IdentityMatrix
