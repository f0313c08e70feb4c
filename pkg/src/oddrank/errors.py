"""Exception hierarchy shared by all modules."""


class OddRankError(Exception):
    """Base class for every error raised by this package."""


class DegeneratePrecisionError(OddRankError, ValueError):
    """A series would have an empty validity range (precision <= valuation)."""


class NonInvertibleError(OddRankError, ValueError):
    """Leading coefficient is not a unit of the integers."""


class LevelError(OddRankError, ValueError):
    """An eta-quotient uses a delta that does not divide the level."""


class FractionalPowerError(OddRankError, ValueError):
    """An eta-quotient has a non-integral q-prefactor."""


class ZeroFactorError(OddRankError, ValueError):
    """A bracket residue is congruent to 0 modulo its base."""


class PoleError(OddRankError, ValueError):
    """A Lambert series denominator vanishes identically for some index."""


class DivergenceError(OddRankError, ValueError):
    """A Lambert series cannot be truncated (exponents do not grow)."""


class BudgetError(OddRankError):
    """A requested computation exceeds the configured size budget."""

    def __init__(self, message, feasible=None):
        super().__init__(message)
        self.feasible = feasible


class IntegrityError(OddRankError):
    """An internal consistency check failed."""


class CoverageError(OddRankError):
    """A discrete array was not extended far enough for a computation."""
