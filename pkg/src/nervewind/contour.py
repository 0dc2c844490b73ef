"""Paths in the punctured plane and branch-tracked quadrature of
omega = dz / sqrt(z(z-1)(z-t)).

The integrand is bivalued: every integral continues one square root
continuously along the path, starting from a chosen branch at the path's
start point.  Paths are chains of line segments and circular arcs, which
suffices for keyhole loops around the branch points 0, 1, t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import GeometryError, QuadratureError

TAU = math.tau

#: Minimum admissible distance between punctures, and from any path point
#: to any puncture.
SEPARATION_FLOOR = 1e-6

#: Default absolute quadrature tolerance.  Downstream winding decisions are
#: robust to far larger errors.
DEFAULT_TOL = 1e-10

_MAX_DEPTH = 50

# Fixed 15-point Gauss-Legendre rule per panel; panels are bisected until
# the whole-panel and two-half estimates agree.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def branch_cubic(z, t):
    """The cubic z(z-1)(z-t) sitting under the square root of omega."""
    return z * (z - 1.0) * (z - t)


@dataclass(frozen=True)
class PunctureConfig:
    """Finite branch points {0, 1, t}; the fourth branch point is infinity."""

    t: complex

    def __post_init__(self):
        t = complex(self.t)
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise GeometryError("t must be finite")
        if abs(t) <= SEPARATION_FLOOR or abs(t - 1.0) <= SEPARATION_FLOOR:
            raise GeometryError(
                f"t={t} is closer than {SEPARATION_FLOOR} to a fixed puncture"
            )

    @property
    def punctures(self):
        return (0.0 + 0.0j, 1.0 + 0.0j, complex(self.t))

    def min_pairwise_distance(self):
        p = self.punctures
        return min(abs(p[0] - p[1]), abs(p[0] - p[2]), abs(p[1] - p[2]))


@dataclass(frozen=True)
class LineSegment:
    start: complex
    end: complex

    def point(self, s):
        return self.start + s * (self.end - self.start)

    def derivative(self, s):
        return self.end - self.start

    @property
    def length(self):
        return abs(self.end - self.start)

    def reversed(self):
        return LineSegment(self.end, self.start)

    def min_distance_to(self, p):
        d = self.end - self.start
        L2 = (d * d.conjugate()).real
        if L2 == 0.0:
            return abs(p - self.start)
        s = ((p - self.start) * d.conjugate()).real / L2
        s = min(1.0, max(0.0, s))
        return abs(p - self.point(s))


@dataclass(frozen=True)
class CircleArc:
    """Arc theta0 -> theta1 on a circle; theta1 < theta0 runs clockwise."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, s):
        ang = self.theta0 + s * (self.theta1 - self.theta0)
        return self.center + self.radius * np.exp(1j * ang)

    def derivative(self, s):
        ang = self.theta0 + s * (self.theta1 - self.theta0)
        return 1j * (self.theta1 - self.theta0) * self.radius * np.exp(1j * ang)

    @property
    def start(self):
        return complex(self.point(0.0))

    @property
    def end(self):
        return complex(self.point(1.0))

    @property
    def length(self):
        return abs(self.theta1 - self.theta0) * self.radius

    def reversed(self):
        return CircleArc(self.center, self.radius, self.theta1, self.theta0)

    def min_distance_to(self, p):
        rel = p - self.center
        d = abs(rel)
        if d < 1e-300:
            return self.radius
        psi = cmath.phase(rel)
        sweep = self.theta1 - self.theta0
        if sweep != 0.0:
            for k in (-1, 0, 1):
                s = (psi + k * TAU - self.theta0) / sweep
                if 0.0 <= s <= 1.0:
                    return abs(d - self.radius)
        return min(abs(p - self.start), abs(p - self.end))


Segment = Union[LineSegment, CircleArc]


@dataclass(frozen=True)
class ParamPath:
    """Chain of smooth segments; consecutive endpoints must coincide."""

    segments: tuple

    def __post_init__(self):
        if not self.segments:
            raise GeometryError("empty path")
        scale = max(1.0, max(abs(complex(s.point(0.0))) for s in self.segments))
        for prev, nxt in zip(self.segments, self.segments[1:]):
            gap = abs(complex(prev.point(1.0)) - complex(nxt.point(0.0)))
            if gap > 1e-12 * scale:
                raise GeometryError(f"segment endpoints differ by {gap:g}")

    @property
    def start(self):
        return complex(self.segments[0].point(0.0))

    @property
    def end(self):
        return complex(self.segments[-1].point(1.0))

    def is_closed(self, rel_tol=1e-9):
        scale = max(1.0, abs(self.start), abs(self.end))
        return abs(self.start - self.end) <= rel_tol * scale

    def reversed(self):
        return ParamPath(tuple(s.reversed() for s in reversed(self.segments)))

    def validate_separation(self, punctures, floor=SEPARATION_FLOOR):
        for seg in self.segments:
            for p in punctures:
                if seg.min_distance_to(p) <= floor:
                    raise GeometryError(
                        f"path passes within {floor:g} of puncture {p}"
                    )

    def winding_number_about(self, p, samples_per_segment=512):
        """Winding of the path about p, from wrapped phase increments."""
        total = 0.0
        for seg in self.segments:
            s = np.linspace(0.0, 1.0, samples_per_segment + 1)
            ang = np.angle(seg.point(s) - p)
            d = np.diff(ang)
            d = (d + math.pi) % TAU - math.pi
            total += float(np.sum(d))
        return int(round(total / TAU))


@dataclass(frozen=True)
class BranchState:
    """Which square root of z(z-1)(z-t) is selected, relative to the
    principal root at the reference point."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("branch sign must be +1 or -1")


def _split_arc(center, radius, theta0, theta1):
    """Quarter-turn pieces keep sqrt-argument steps between quadrature
    nodes well below pi/2."""
    sweep = theta1 - theta0
    n = max(1, math.ceil(abs(sweep) / (math.pi / 2)))
    cuts = [theta0 + sweep * k / n for k in range(n + 1)]
    return [CircleArc(center, radius, a, b) for a, b in zip(cuts, cuts[1:])]


def _corridor(z0, target_point, blockers, clearance):
    """Segments from z0 to target_point, detouring around any blocker whose
    distance to the straight line is below `clearance`.

    The detour is a circular arc of radius `clearance` around the blocker,
    bulging away from the blocker's side of the line (left on a tie), so the
    corridor's homotopy class is stable under small endpoint changes.
    """
    delta = target_point - z0
    L = abs(delta)
    if L == 0.0:
        raise GeometryError("corridor has zero length")
    u = delta / L

    events = []
    for p in blockers:
        rel = (p - z0) / u
        s_p, d_p = rel.real, rel.imag
        if abs(d_p) >= clearance:
            continue
        if s_p <= 0.0 or s_p >= L:
            if abs(p - z0) < clearance or abs(p - target_point) < clearance:
                raise GeometryError(
                    f"corridor endpoint within clearance {clearance:g} of {p}"
                )
            continue
        half = math.sqrt(clearance * clearance - d_p * d_p)
        s_in, s_out = s_p - half, s_p + half
        if s_in <= 1e-9 * L or s_out >= L - 1e-9 * L:
            raise GeometryError(
                f"detour around {p} would overrun the corridor ends"
            )
        events.append((s_in, s_out, p, d_p))

    events.sort(key=lambda e: e[0])
    for (a0, b0, p0, _), (a1, b1, p1, _) in zip(events, events[1:]):
        if b0 >= a1:
            raise GeometryError(
                f"detours around {p0} and {p1} overlap; move the basepoint"
            )

    segments = []
    cursor = 0.0
    for s_in, s_out, p, d_p in events:
        if s_in > cursor:
            segments.append(LineSegment(z0 + cursor * u, z0 + s_in * u))
        entry = z0 + s_in * u
        exit_ = z0 + s_out * u
        th_in = cmath.phase(entry - p)
        th_out = cmath.phase(exit_ - p)
        bulge = -1.0 if d_p > 1e-9 else 1.0  # away from the blocker; left on ties
        sweep = math.remainder(th_out - th_in, TAU)
        mid = p + clearance * cmath.exp(1j * (th_in + sweep / 2.0))
        side = ((mid - z0) / u).imag
        if side * bulge < 0.0:
            sweep -= math.copysign(TAU, sweep)
        segments.extend(_split_arc(p, clearance, th_in, th_in + sweep))
        cursor = s_out
    segments.append(LineSegment(z0 + cursor * u, target_point))
    return segments


def make_puncture_loop(j, t, z0, radius):
    """Keyhole loop based at z0 winding once positively about puncture j.

    j is one of 0, 1, "t".  The loop is corridor out, full circle
    counterclockwise, corridor back; the corridor detours around any other
    puncture sitting too close to the straight approach line.
    """
    config = PunctureConfig(t)
    punctures = {0: config.punctures[0], 1: config.punctures[1], "t": config.punctures[2]}
    if j not in punctures:
        raise GeometryError(f"puncture index must be 0, 1 or 't', got {j!r}")
    target = punctures[j]
    others = [p for key, p in punctures.items() if key != j]

    if radius <= 0.0:
        raise GeometryError("radius must be positive")
    min_other = min(abs(target - p) for p in others)
    if radius >= 0.5 * min_other:
        raise GeometryError(
            f"radius {radius:g} too large: circle around {target} would "
            f"approach another puncture (nearest at distance {min_other:g})"
        )
    if abs(z0 - target) <= radius:
        raise GeometryError("basepoint lies inside the loop circle")

    clearance = 0.25 * config.min_pairwise_distance()
    approach = target + radius * (z0 - target) / abs(z0 - target)
    out = _corridor(z0, approach, others, clearance)
    theta = cmath.phase(approach - target)
    circle = _split_arc(target, radius, theta, theta + TAU)
    back = [seg.reversed() for seg in reversed(out)]
    path = ParamPath(tuple(out + circle + back))
    path.validate_separation(config.punctures)
    return path


def _panel(seg, t, a, b, w_start):
    """Gauss-Legendre estimate of the panel [a, b] of one segment.

    Returns (ok, integral, w_end); ok is False when the tracked square
    root turns by >= pi/2 between consecutive nodes, which forces a bisection
    instead of trusting the continuation.
    """
    half = 0.5 * (b - a)
    nodes = a + (_GL_NODES + 1.0) * half
    chain = np.concatenate((nodes, [b]))

    integral = 0.0 + 0.0j
    w_prev = w_start
    values = []
    for s in chain:
        z = complex(seg.point(s))
        w = cmath.sqrt(branch_cubic(z, t))
        if abs(w - w_prev) > abs(w + w_prev):
            w = -w
        turn = math.atan2(w.imag, w.real) - math.atan2(w_prev.imag, w_prev.real)
        if abs(math.remainder(turn, TAU)) >= math.pi / 2:
            return False, 0.0j, w_prev
        values.append(w)
        w_prev = w
    for k in range(15):
        s = chain[k]
        integral += _GL_WEIGHTS[k] * complex(seg.derivative(s)) / values[k]
    return True, half * integral, values[-1]


def _adaptive(seg, t, a, b, w_start, tol, depth):
    ok_w, whole, _ = _panel(seg, t, a, b, w_start)
    m = 0.5 * (a + b)
    ok_l, left, w_mid = _panel(seg, t, a, m, w_start)
    if ok_l:
        ok_r, right, w_end = _panel(seg, t, m, b, w_mid)
    else:
        ok_r, right, w_end = False, 0.0j, w_mid
    if ok_w and ok_l and ok_r and abs(whole - (left + right)) <= tol:
        return left + right, w_end
    if depth >= _MAX_DEPTH:
        raise QuadratureError(
            f"no convergence after {_MAX_DEPTH} bisections on panel "
            f"[{a:g}, {b:g}] of {type(seg).__name__}"
        )
    vl, w_mid = _adaptive(seg, t, a, m, w_start, 0.5 * tol, depth + 1)
    vr, w_end = _adaptive(seg, t, m, b, w_mid, 0.5 * tol, depth + 1)
    return vl + vr, w_end


def integrate_branch_tracked(path, t, initial=None, tol=DEFAULT_TOL):
    """Integrate omega along `path`, continuing the square root from the
    branch selected by `initial` at the path start.

    Returns (value, final) where final reports the branch sign at the
    path's endpoint relative to the principal root there.  The quadrature
    error estimate is below `tol`.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if initial is None:
        initial = BranchState(1)
    config = PunctureConfig(t)
    path.validate_separation(config.punctures)

    w = initial.sign * cmath.sqrt(branch_cubic(path.start, t))
    total = 0.0 + 0.0j
    seg_tol = tol / len(path.segments)
    for seg in path.segments:
        value, w = _adaptive(seg, t, 0.0, 1.0, w, seg_tol, 0)
        total += value

    principal = cmath.sqrt(branch_cubic(path.end, t))
    final_sign = 1 if abs(w - principal) <= abs(w + principal) else -1
    return total, BranchState(final_sign)


def composite_integral(path, t, panels_per_segment, initial=None):
    """Non-adaptive composite rule over uniform panels; used for
    convergence-order checks and as a second quadrature route in tests."""
    if initial is None:
        initial = BranchState(1)
    w = initial.sign * cmath.sqrt(branch_cubic(path.start, t))
    total = 0.0 + 0.0j
    for seg in path.segments:
        cuts = np.linspace(0.0, 1.0, panels_per_segment + 1)
        for a, b in zip(cuts, cuts[1:]):
            ok, value, w_new = _panel(seg, t, a, b, w)
            if not ok:
                raise QuadratureError("branch tracking failed on a fixed panel")
            total += value
            w = w_new
    return total, w
