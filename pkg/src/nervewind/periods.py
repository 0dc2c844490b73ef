"""Half-period integrals over keyhole loops and the period triangle.

All three loops are integrated from the same branch of the square root at
the shared basepoint, so the triangle of differences is well defined up to
one global sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from .contour import (
    DEFAULT_TOL,
    BranchState,
    PunctureConfig,
    integrate_branch_tracked,
    make_puncture_loop,
)
from .errors import DegenerateTriangleError, GeometryError, QuadratureError

#: Away from [0, 1] and from typical t.
DEFAULT_BASEPOINT = -2.0 - 2.0j

#: Loop radius as a fraction of the distance to the nearest other puncture.
DEFAULT_RADIUS_FACTOR = 0.25

#: Non-degeneracy floor on |Im(b/a)|.
DEGENERACY_FLOOR = 1e-6


@dataclass(frozen=True)
class HalfPeriods:
    """Values of the branch-tracked loop integrals around 0, 1 and t."""

    pi0: complex
    pi1: complex
    pit: complex
    basepoint: complex
    tol_used: float


@dataclass(frozen=True)
class PeriodTriangle:
    """Sides a = pi0 - pi1, b = pit - pi0, c = pi1 - pit; a + b + c = 0."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        scale = max(abs(self.a), abs(self.b), abs(self.c))
        if scale == 0.0:
            raise DegenerateTriangleError("all sides vanish")
        if abs(self.a + self.b + self.c) > 1e-12 * scale:
            raise DegenerateTriangleError(
                f"sides do not close: |a+b+c| = {abs(self.a + self.b + self.c):g}"
            )
        if min(abs(self.a), abs(self.b), abs(self.c)) <= 1e-14 * scale:
            raise DegenerateTriangleError("a side has zero length")
        ratio = self.b / self.a
        if abs(ratio.imag) <= DEGENERACY_FLOOR:
            raise DegenerateTriangleError(
                f"collinear periods: |Im(b/a)| = {abs(ratio.imag):g}"
            )

    @classmethod
    def from_sides(cls, a, b, c=None):
        if c is None:
            c = -(a + b)
        return cls(complex(a), complex(b), complex(c))

    @property
    def sides(self):
        return (self.a, self.b, self.c)


def half_periods(t, z0=None, tol=DEFAULT_TOL, radius_factor=DEFAULT_RADIUS_FACTOR):
    """Compute the three keyhole-loop integrals with one coherent branch.

    Each loop is make_puncture_loop(j, ...) with the auto radius
    radius_factor * (distance from puncture j to the nearest other
    puncture); all three integrations start from the principal square root
    at z0.
    """
    config = PunctureConfig(t)
    if z0 is None:
        z0 = DEFAULT_BASEPOINT
    z0 = complex(z0)
    if not (0.0 < radius_factor < 0.5):
        raise GeometryError("radius_factor must lie in (0, 0.5)")
    clearance = 0.25 * config.min_pairwise_distance()
    for p in config.punctures:
        if abs(z0 - p) <= clearance:
            raise GeometryError(f"basepoint {z0} too close to puncture {p}")

    punctures = {0: config.punctures[0], 1: config.punctures[1], "t": config.punctures[2]}
    values = {}
    for j, target in punctures.items():
        min_other = min(abs(target - p) for key, p in punctures.items() if key != j)
        loop = make_puncture_loop(j, t, z0, radius_factor * min_other)
        value, final = integrate_branch_tracked(loop, t, BranchState(1), tol)
        if final.sign != -1:
            raise QuadratureError(
                f"loop around {j} did not flip the branch; tracking failed"
            )
        if abs(value) <= 10.0 * tol:
            raise QuadratureError(
                f"half-period around {j} indistinguishable from zero"
            )
        values[j] = value
    return HalfPeriods(values[0], values[1], values["t"], z0, tol)


def period_triangle(hp):
    """Assemble the triangle of half-period differences and validate it."""
    return PeriodTriangle(
        hp.pi0 - hp.pi1,
        hp.pit - hp.pi0,
        hp.pi1 - hp.pit,
    )
