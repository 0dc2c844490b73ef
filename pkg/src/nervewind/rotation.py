"""Critical angles of a rotating triangle and the dominance arcs of S^1.

Rotating a triangle with sides a, b, c (a + b + c = 0) by phi/2, each side
becomes purely imaginary at exactly one phi in [0, 2pi).  Those three
critical angles cut the circle into arcs on which one side's projection
onto the real axis strictly dominates the other two.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateTriangleError

TAU = math.tau

#: Critical angles closer than this (circularly) are treated as coincident.
ANGLE_GAP_FLOOR = 1e-8


def critical_angle(side):
    """The unique phi in [0, 2pi) with Re(e^{i phi/2} side) = 0.

    Closed form: phi = 2 ((pi/2 - arg side) mod pi).  The sign of the side
    is irrelevant since phi/2 only sweeps a half turn.
    """
    side = complex(side)
    if side == 0:
        raise DegenerateTriangleError("zero side has no critical angle")
    arg = math.atan2(side.imag, side.real)
    return 2.0 * ((0.5 * math.pi - arg) % math.pi) % TAU


@dataclass(frozen=True)
class CriticalAngles:
    phi_a: float
    phi_b: float
    phi_c: float

    def as_tuple(self):
        return (self.phi_a, self.phi_b, self.phi_c)


@dataclass(frozen=True)
class Arc:
    """Closed circular arc from `start` counterclockwise to `end`.

    `side_index` is the side (1, 2 or 3) whose projection dominates on the
    interior; the excluded critical angle is the one not among the
    endpoints.
    """

    start: float
    end: float
    side_index: int

    @property
    def label(self):
        return f"I{self.side_index}"

    @property
    def length(self):
        return (self.end - self.start) % TAU

    def position(self, phi):
        return (phi - self.start) % TAU

    def contains(self, phi):
        return self.position(phi) <= self.length + 1e-15

    def clearance(self, phi):
        """Circular distance from phi to the nearer endpoint, negative if
        phi lies outside the closed arc."""
        d = self.position(phi)
        if d > self.length:
            return -min((d - self.length) % TAU, (TAU - d) % TAU)
        return min(d, self.length - d)

    @property
    def midpoint(self):
        return (self.start + 0.5 * self.length) % TAU


@dataclass(frozen=True)
class ArcDecomposition:
    arcs: tuple  # (I1, I2, I3)
    angles: CriticalAngles

    def locate(self, phi):
        """The arc containing phi; boundary angles resolve to the lowest
        arc index."""
        for arc in self.arcs:
            if arc.contains(phi):
                return arc
        # Fall back on the nearest arc; only reachable through rounding at
        # a shared endpoint.
        return max(self.arcs, key=lambda a: a.clearance(phi))


def _circular_gap(x, y):
    d = abs(x - y) % TAU
    return min(d, TAU - d)


def arc_decomposition(tri):
    """Critical angles of the triangle's sides and the arcs I1, I2, I3.

    I1 is the closed arc bounded by phi_b and phi_c whose interior excludes
    phi_a, and cyclically.  On the interior of I_j the projected length of
    side j is the strict maximum of the three.
    """
    phi_a = critical_angle(tri.a)
    phi_b = critical_angle(tri.b)
    phi_c = critical_angle(tri.c)
    angles = CriticalAngles(phi_a, phi_b, phi_c)

    pairs = ((phi_a, phi_b), (phi_a, phi_c), (phi_b, phi_c))
    if min(_circular_gap(u, v) for u, v in pairs) <= ANGLE_GAP_FLOOR:
        raise DegenerateTriangleError("critical angles coincide")

    def arc_excluding(u, v, excluded, side_index):
        # Counterclockwise u -> v, flipped if that sweep passes `excluded`.
        if (excluded - u) % TAU < (v - u) % TAU:
            u, v = v, u
        return Arc(u, v, side_index)

    arcs = (
        arc_excluding(phi_b, phi_c, phi_a, 1),
        arc_excluding(phi_c, phi_a, phi_b, 2),
        arc_excluding(phi_a, phi_b, phi_c, 3),
    )
    total = sum(arc.length for arc in arcs)
    if abs(total - TAU) > 1e-9:
        raise DegenerateTriangleError("arcs fail to tile the circle")
    return angles, ArcDecomposition(arcs, angles)


def projected_lengths(tri, phi):
    """|Re(e^{i phi/2} side)| for the three sides."""
    rot = cmath.exp(0.5j * phi)
    return tuple(abs((rot * s).real) for s in tri.sides)


def dominant_side(tri, phi):
    """Index (1-based) of the side with the largest projected length at phi,
    and the margin to the runner-up.  Ties return the lowest index."""
    p = projected_lengths(tri, phi)
    order = sorted(range(3), key=lambda i: (-p[i], i))
    margin = p[order[0]] - p[order[1]]
    return order[0] + 1, margin
