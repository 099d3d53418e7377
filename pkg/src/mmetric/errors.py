"""Exception types shared across the package."""

from __future__ import annotations


class MMetricError(Exception):
    """Base class for all package errors."""


class MalformedSpaceError(MMetricError, ValueError):
    """Input table or distance function violates a structural invariant.

    The message always carries a concrete witness (indices or points plus
    the offending values).
    """


class UnknownPointError(MMetricError, KeyError):
    """A point label or value is not a member of the space."""


class UnknownEntryError(MMetricError, KeyError):
    """A corpus name is not registered."""


class PreconditionError(MMetricError, ValueError):
    """An operation's declared precondition does not hold.

    Carries an optional ``witness`` tuple when the failure was discovered by
    a concrete counterexample (for example a sampled pair violating a
    contraction bound).
    """

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class AmbiguousVerdictError(MMetricError):
    """A numeric verdict sits on a tolerance boundary.

    Raised instead of returning a value that would contradict a theorem
    (for example two distinct points both passing the special-limit test).
    """


class GenerationError(MMetricError, RuntimeError):
    """Random space generation exhausted its resample budget."""


class VerificationError(MMetricError, RuntimeError):
    """A mathematically guaranteed consequence failed its numeric check.

    Indicates a tolerance artifact or an implementation bug, never a valid
    outcome.
    """
