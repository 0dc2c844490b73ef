"""Exception hierarchy shared by all nervewind modules."""


class NerveWindError(Exception):
    """Base class for all errors raised by this package."""


class GeometryError(NerveWindError):
    """A path or loop construction violates puncture separation constraints."""


class QuadratureError(NerveWindError):
    """Adaptive quadrature failed to converge within the subdivision budget."""


class DegenerateTriangleError(NerveWindError):
    """Period triangle is degenerate (collinear or coincident half-periods)."""


class NotNearInfinityError(NerveWindError):
    """Trace coordinates are O(1); the point is not in the neighbourhood of
    the divisor at infinity, so nerve-complex maps are undefined."""


class AmbiguousPointError(NerveWindError):
    """All three relative log-magnitudes coincide; no nerve point is defined."""


class InvalidNervePointError(NerveWindError):
    """Barycentric point lies in the open 2-simplex, not on its boundary."""


class UndersampledError(NerveWindError):
    """Consecutive nerve angles jump by >= pi/2; the sampling grid is too
    coarse to certify a winding number."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class TheoremViolationError(NerveWindError):
    """An arc-edge correspondence or winding consistency check failed.

    This signals an implementation or configuration problem, not a
    counterexample: raised when guarded samples land outside the predicted
    closed edge or when windings disagree across a sweep.
    """
