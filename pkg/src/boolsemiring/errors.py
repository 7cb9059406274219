"""Exception hierarchy shared by every module of the package."""


class SemiringError(Exception):
    """Base class for all errors raised by :mod:`boolsemiring`."""


class RankMismatch(SemiringError, ValueError):
    """Operands live in group semirings of different rank."""


class CoefficientOverflow(SemiringError, OverflowError):
    """A coefficient, grade or count left the checked 64-bit range."""


class BudgetExceeded(SemiringError):
    """The predicted or actual amount of work exceeds the configured cap.

    ``budget`` names which cap was hit, so callers (and the CLI) can report it.
    """

    def __init__(self, budget: str, needed: int, limit: int):
        self.budget = budget
        self.needed = needed
        self.limit = limit
        super().__init__(f"{budget} budget exceeded: need {needed}, limit {limit}")


class NotIntegral(SemiringError, ValueError):
    """A character signature whose inverse transform is not integral."""


class NegativeCoefficient(SemiringError, ValueError):
    """A character signature whose inverse transform has a negative entry."""


class Undefined(SemiringError, ValueError):
    """A normalized quantity requested outside its domain."""


class OracleMismatch(SemiringError):
    """Two independent computations of the same quantity disagree."""


class ElementFormatError(SemiringError, ValueError):
    """Malformed element or signature text."""
