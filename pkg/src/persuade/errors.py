"""Exception hierarchy. Every raisable error in the package derives from
PersuadeError so callers can catch at the library boundary."""


class PersuadeError(Exception):
    """Base class for all library errors."""


class MeanMismatch(PersuadeError):
    """Lattice operations require equal means."""


class NullEvent(PersuadeError):
    """Conditioning on a set of zero probability."""


class DomainError(PersuadeError, ValueError):
    """Argument outside [0, 1] or otherwise out of contract."""


class NotRegular(PersuadeError):
    """Operation requires a regular payoff (continuous C^1 with a finite
    curvature partition) and the input failed check_regular."""


class EmptySet(PersuadeError):
    """Restricted envelope over an empty set."""


class Infeasible(PersuadeError):
    """The linear program has no feasible point (inconsistent lower bound)."""


class NumericFailure(PersuadeError):
    """The solver did not reach a verified optimum; the message carries a
    condition report."""


class NoRoot(PersuadeError):
    """Bisection residual does not change sign on the search interval.

    Carries the boundary candidate with the smaller residual."""

    def __init__(self, message, candidate=None):
        super().__init__(message)
        self.candidate = candidate


class NotComparable(PersuadeError):
    """The two distributions are not ordered by informativeness."""


class NotAViolation(PersuadeError):
    """Counterexample construction requires a crater-property violation."""


class ConstructionFailure(PersuadeError):
    """A counterexample construction stage failed; message names the stage."""


class InvalidWitness(PersuadeError):
    """A witness failed exact re-verification."""
