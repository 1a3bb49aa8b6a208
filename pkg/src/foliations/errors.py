"""Exception hierarchy.

The command-line front end maps these onto exit codes: parse problems give
2, violated preconditions give 3, and mathematical inconsistencies give 4.
"""


class FoliationError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FoliationError, ValueError):
    """Malformed polynomial or field text; ``offset`` is a byte offset."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class PreconditionError(FoliationError, ValueError):
    """An operation was called outside its domain."""


class NotDivisible(PreconditionError):
    """A monomial power does not divide a term."""

    def __init__(self, term: str):
        super().__init__(f"term {term} is not divisible")
        self.term = term


class DegenerateField(PreconditionError):
    """All components of the first block vanish identically."""


class ChartOutOfRange(PreconditionError):
    pass


class NotSingularAlongCenter(PreconditionError):
    """The center is not contained in the singular set."""


class BranchNotSingular(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError, IndexError):
    pass


class ZeroLambda(PreconditionError):
    pass


class HypothesisNotMet(PreconditionError):
    pass


class SeedExhausted(PreconditionError):
    pass


class UnsupportedBranch(FoliationError):
    """A branch curve is not polynomial (or needs a square root outside Q)."""

    def __init__(self, message: str, data: dict | None = None):
        super().__init__(message)
        self.data = data or {}


class MathInconsistency(FoliationError):
    """Results that contradict a theorem's guarantees (exit code 4)."""


class NonIntegerResult(MathInconsistency):
    """A count that must be an integer came out fractional."""

    def __init__(self, what: str, value):
        super().__init__(f"{what} = {value} is not an integer")
        self.value = value


class NotStabilized(MathInconsistency):
    def __init__(self, max_degree: int, partial: int):
        super().__init__(
            f"local algebra dimension did not stabilize by degree {max_degree} "
            f"(partial dimension {partial})"
        )
        self.max_degree = max_degree
        self.partial = partial


class NotIsolated(PreconditionError):
    pass
