"""Exception types shared across the package."""


class NcpartError(Exception):
    """Base class for all errors raised by ncpart."""


# --- tree / walk / partition validation ---

class SumMismatch(NcpartError):
    """Outdegree sequence does not sum to (number of vertices - 1)."""


class BallotViolation(NcpartError):
    """Outdegree sequence violates the ballot (nonnegative prefix) property."""


class InvalidWalk(NcpartError):
    """Integer path is not a valid Lukasiewicz walk."""


class NotAPartition(NcpartError):
    """Blocks do not form a partition of {1, ..., n}."""


class Crossing(NcpartError):
    """Partition has two crossing blocks.

    ``witness`` is a quadruple a < b < c < d with a, c in one block and
    b, d in another.
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"crossing witness {self.witness}")


# --- weight sequences / tilted laws ---

class RhoZero(NcpartError):
    """Weight sequence has zero radius of convergence; no tilted law exists."""


class NonconvergentSeries(NcpartError):
    """A power-series evaluation did not converge within the term budget."""


class DegenerateSet(NcpartError):
    """Block-size set is empty or equal to {1}."""


class DegeneratePi(NcpartError):
    """Tilted law puts all mass on 0; conditional block laws undefined."""


class NotDivisible(NcpartError):
    """n is not divisible by gcd of the block-size set."""


# --- sampling ---

class Infeasible(NcpartError):
    """No partition (equivalently, degree sequence) exists for this size."""


class BadSum(NcpartError):
    """Degree increments do not sum to -1; cycle shift undefined."""


class TooLarge(NcpartError):
    """Requested exhaustive enumeration beyond the safety bound."""


# --- free probability ---

class NegativeCumulant(NcpartError):
    """Support solver requires nonnegative free cumulants."""


class DiracInput(NcpartError):
    """Measure is a Dirac mass (no cumulant of order >= 2 is positive)."""


class RhoUndetermined(NcpartError):
    """Cumulant decay rate cannot be determined from the given data."""


class InfiniteVariance(NcpartError):
    """Tilted law has infinite variance; Gaussian limit does not apply."""
