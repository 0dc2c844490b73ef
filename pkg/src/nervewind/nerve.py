"""The boundary nerve of the divisor at infinity and loops in its body.

The divisor has three line components meeting pairwise; its nerve is the
boundary of a 2-simplex, a circle.  Points near infinity map into that
circle through a partition of unity built from relative log-magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AmbiguousPointError,
    InvalidNervePointError,
    NotNearInfinityError,
    UndersampledError,
)

TAU = math.tau

#: A point counts as near infinity once some trace coordinate exceeds the
#: affine one by this factor.
NEAR_INFINITY_THRESHOLD = 1e3

#: Stand-in for -inf log-magnitudes so the partition arithmetic stays finite.
_LOG_CLAMP = -1e15

#: Vertex angles on |N| = S^1: v1 -> 0, v2 -> 2pi/3, v3 -> 4pi/3.
VERTEX_ANGLES = (0.0, TAU / 3.0, 2.0 * TAU / 3.0)


@dataclass(frozen=True)
class NerveComplex:
    """Fixed combinatorics: vertices are the divisor components
    {X0=0=Xj}; edges are their pairwise intersection points."""

    vertices: tuple = ("v1", "v2", "v3")
    edges: tuple = (("v1", "v2"), ("v2", "v3"), ("v3", "v1"))
    edge_points: tuple = ("[0:0:0:1]", "[0:1:0:0]", "[0:0:1:0]")


NERVE = NerveComplex()

#: Interior of arc I_j maps into this closed edge of the nerve.
EDGE_FOR_ARC = {1: "v2v3", 2: "v3v1", 3: "v1v2"}


@dataclass(frozen=True)
class NervePoint:
    """Barycentric triple on the triangle boundary |N|."""

    bary: tuple

    def __post_init__(self):
        if len(self.bary) != 3:
            raise ValueError("barycentric triple expected")
        if abs(sum(self.bary) - 1.0) > 1e-12:
            raise ValueError("barycentric coordinates must sum to 1")

    def zero_indices(self):
        return tuple(i for i, v in enumerate(self.bary) if v == 0.0)


def partition_of_unity(point, threshold=NEAR_INFINITY_THRESHOLD):
    """Map a projective point near infinity onto the nerve body.

    With l_j the relative log-magnitudes and {j,k,l} = {1,2,3}:
    s_j = l_k + l_l - 2 l_j, w_j = max(0, s_j), phi_j = w_j / sum(w).
    The s_j sum to zero, so at most two w_j are positive and at least one
    barycentric coordinate is exactly 0: the image lies on the boundary.
    """
    l0, l1, l2, l3 = point.logmags
    if max(l1, l2, l3) <= l0 + math.log(threshold):
        raise NotNearInfinityError(
            "no trace coordinate dominates the affine chart by the "
            f"threshold factor {threshold:g}"
        )
    l1, l2, l3 = (max(v, _LOG_CLAMP) for v in (l1, l2, l3))
    s = (l2 + l3 - 2.0 * l1, l3 + l1 - 2.0 * l2, l1 + l2 - 2.0 * l3)
    w = tuple(max(0.0, v) for v in s)
    total = sum(w)
    if total == 0.0:
        raise AmbiguousPointError("all three log-magnitudes coincide")
    return NervePoint(tuple(v / total for v in w))


def nerve_angle(p):
    """Circle coordinate on |N|: vertices at 0, 2pi/3, 4pi/3; linear in the
    barycentric coordinate along each edge."""
    b1, b2, b3 = p.bary
    third = TAU / 3.0
    if b1 == 0.0:
        return (third + b3 * third) % TAU  # edge [v2 v3]
    if b2 == 0.0:
        return (2.0 * third + b1 * third) % TAU  # edge [v3 v1]
    if b3 == 0.0:
        return (b2 * third) % TAU  # edge [v1 v2]
    raise InvalidNervePointError(f"interior point {p.bary} is not on |N|")


@dataclass(frozen=True)
class TrajectorySample:
    phi: float
    projective: object
    nerve: NervePoint
    angle: float


@dataclass(frozen=True)
class Trajectory:
    """Samples of the composite map phi -> nerve angle over [0, 2pi]."""

    samples: tuple
    closed: bool = True

    def __post_init__(self):
        phis = [s.phi for s in self.samples]
        if any(b <= a for a, b in zip(phis, phis[1:])):
            raise ValueError("sample parameters must be strictly increasing")
        if phis and (phis[0] < -1e-12 or phis[-1] > TAU + 1e-12):
            raise ValueError("sample parameters must lie in [0, 2pi]")
        if self.closed and self.samples:
            gap = math.remainder(self.samples[-1].angle - self.samples[0].angle, TAU)
            if abs(gap) > 1e-9:
                raise ValueError(
                    f"closed trajectory endpoints disagree by {gap:g} rad"
                )

    @property
    def angles(self):
        return [s.angle for s in self.samples]


def winding_from_angles(angles: Sequence[float], closed=True):
    """Winding number of a sampled circle map from wrapped increments.

    Every wrapped step must stay below pi/2 in absolute value; otherwise
    the sampling cannot distinguish the two ways around and the caller must
    refine.
    """
    total = 0.0
    for k, (u, v) in enumerate(zip(angles, angles[1:])):
        d = math.remainder(v - u, TAU)
        if abs(d) >= 0.5 * math.pi:
            raise UndersampledError(
                f"angle step {d:+.3f} rad at sample {k} exceeds pi/2",
                window=(k, k + 1),
            )
        total += d
    turns = total / TAU
    winding = round(turns)
    if closed and abs(turns - winding) > 1e-6:
        raise UndersampledError(
            f"wrapped increments sum to {turns:.6f} turns, not an integer"
        )
    return int(winding)


def winding_number(traj: Trajectory):
    """Winding of a closed trajectory in |N|."""
    if not traj.closed:
        raise ValueError("winding number requires a closed trajectory")
    return winding_from_angles(traj.angles, closed=True)
