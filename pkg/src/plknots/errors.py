"""Exception types shared across the package."""

from __future__ import annotations


class PlknotsError(Exception):
    """Base class for every error raised by this package."""


class DegenerateIntersection(PlknotsError):
    """Segments touch in a way that violates general position.

    Raised for collinear overlap and for an endpoint landing in the interior
    of the other segment.  Plain endpoint-to-endpoint contact is not an
    error; it is reported as "no crossing".
    """


class GeneralPositionViolation(PlknotsError):
    """A polygon fails one of the general-position requirements."""

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(v.detail for v in self.violations)
        super().__init__(detail or "general position violated")


class ValidationError(PlknotsError):
    """Input data is well-formed but violates a documented precondition."""


class ParseError(PlknotsError):
    """Input document is malformed; the message names the offending field."""


class PartialAssignmentError(ValidationError):
    """An operation that needs a total assignment was given a partial one."""


class NoCrossingsError(ValidationError):
    """The diagram has no crossings, so the requested code is undefined."""


class InvalidSetError(ValidationError):
    """A crossing-id set refers to unknown or already-assigned crossings."""


class NotInfeasibleError(ValidationError):
    """A minimal infeasible core was requested for a feasible system."""


class ExhaustedRetriesError(PlknotsError):
    """A deterministic retry sequence ran out of attempts."""


class BudgetExceededError(PlknotsError):
    """An enumeration hit its state budget.

    The ``partial`` attribute carries the best result found before the
    budget ran out, flagged as incomplete.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
