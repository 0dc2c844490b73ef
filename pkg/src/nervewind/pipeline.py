"""End-to-end runs: trajectory generation, winding certification, and
transition-width diagnostics.

A run fixes t, computes the period triangle once, sweeps phi over [0, 2pi]
at one or more radii R, maps every sample through traces -> projective
point -> nerve point -> circle angle, and certifies the loop's winding.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DegenerateTriangleError,
    NotNearInfinityError,
    TheoremViolationError,
    UndersampledError,
)
from .nerve import (
    EDGE_FOR_ARC,
    NEAR_INFINITY_THRESHOLD,
    Trajectory,
    TrajectorySample,
    nerve_angle,
    partition_of_unity,
    winding_number,
)
from .periods import half_periods, period_triangle
from .rotation import arc_decomposition
from .traces import MuProfile, projective_normalize, trace_coordinates

TAU = math.tau

#: Depth (in log units) of the component tubes used by transition-width
#: measurements; three decades, matching the near-infinity threshold.
DEFAULT_TUBE_DEPTH = math.log(1e3)

#: Guard bands never exceed this fraction of the adjacent arc length.
_GUARD_ARC_CAP = 0.45


@dataclass(frozen=True)
class ExperimentConfig:
    t: complex = 2.0 + 0.5j
    R_values: tuple = (1e2, 1e4, 1e6)
    samples: int = 360
    mu: MuProfile = field(default_factory=MuProfile.zero)
    z0: complex = None
    tol: float = 1e-10
    near_infinity_threshold: float = NEAR_INFINITY_THRESHOLD
    vertex_threshold: float = 0.5
    tube_depth: float = DEFAULT_TUBE_DEPTH
    guard_band: float = None
    refine_cap: int = 12
    seed: int = 0
    csv_path: str = None
    svg_path: str = None
    json_path: str = None

    def __post_init__(self):
        if self.samples < 36:
            raise ValueError("samples must be at least 36")
        if not self.R_values or any(R <= 0.0 for R in self.R_values):
            raise ValueError("all R values must be positive")
        if not 0.0 < self.vertex_threshold < 1.0:
            raise ValueError("vertex_threshold must lie in (0, 1)")

    @classmethod
    def from_dict(cls, data):
        """Build a config from a JSON-style dict.

        Complex numbers are two-element arrays [re, im]; mu is either a
        profile string ('zero', 'const:...', 'random:SEED') or an object
        {"variant": ..., ...}.  Missing fields keep their defaults.
        """
        kwargs = {}
        if "t" in data:
            kwargs["t"] = _parse_complex(data["t"])
        if "z0" in data and data["z0"] is not None:
            kwargs["z0"] = _parse_complex(data["z0"])
        if "R_values" in data:
            kwargs["R_values"] = tuple(float(R) for R in data["R_values"])
        for key in (
            "samples",
            "tol",
            "near_infinity_threshold",
            "vertex_threshold",
            "tube_depth",
            "guard_band",
            "refine_cap",
            "seed",
        ):
            if key in data and data[key] is not None:
                caster = int if key in ("samples", "refine_cap", "seed") else float
                kwargs[key] = caster(data[key])
        if "mu" in data:
            kwargs["mu"] = _parse_mu(data["mu"], kwargs.get("seed", 0))
        for key in ("csv_path", "svg_path", "json_path"):
            if key in data and data[key] is not None:
                kwargs[key] = str(data[key])
        return cls(**kwargs)

    @classmethod
    def from_json_file(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _parse_complex(value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    raise ValueError(f"complex values must be [re, im], got {value!r}")


def _parse_mu(value, default_seed=0):
    if isinstance(value, str):
        return MuProfile.parse(value)
    if isinstance(value, dict):
        variant = value.get("variant", "zero")
        if variant == "zero":
            return MuProfile.zero()
        if variant == "constant":
            return MuProfile.constant(
                float(value["mu0"]), float(value["mu1"]), float(value["mut"])
            )
        if variant == "random":
            return MuProfile.random(
                int(value.get("seed", default_seed)),
                harmonics=int(value.get("harmonics", 3)),
                amplitude=float(value.get("amplitude", 0.1)),
            )
    raise ValueError(f"cannot parse mu profile from {value!r}")


def compute_triangle(cfg):
    """Half periods and period triangle for the configured t, with the
    degenerate case reported against the offending t."""
    try:
        hp = half_periods(cfg.t, cfg.z0, cfg.tol)
        return period_triangle(hp)
    except DegenerateTriangleError as exc:
        raise DegenerateTriangleError(f"t = {cfg.t}: {exc}") from exc


def _sample(cfg, tri, R, phi):
    tt = trace_coordinates(R, phi, tri, cfg.mu)
    point = projective_normalize(tt)
    npnt = partition_of_unity(point, cfg.near_infinity_threshold)
    return TrajectorySample(phi, point, npnt, nerve_angle(npnt))


def run_trajectory(cfg, R, triangle=None):
    """Sample the composite map over a closed uniform phi grid, bisecting
    any interval whose nerve angles jump by >= pi/2, up to cfg.refine_cap
    levels."""
    tri = triangle if triangle is not None else compute_triangle(cfg)
    n = cfg.samples
    base = [_sample(cfg, tri, R, TAU * k / n) for k in range(n + 1)]

    def refine(left, right, depth):
        if abs(math.remainder(right.angle - left.angle, TAU)) < 0.5 * math.pi:
            return []
        if depth >= cfg.refine_cap:
            raise UndersampledError(
                f"refinement cap {cfg.refine_cap} reached on "
                f"phi in [{left.phi:.6f}, {right.phi:.6f}]",
                window=(left.phi, right.phi),
            )
        mid = _sample(cfg, tri, R, 0.5 * (left.phi + right.phi))
        return refine(left, mid, depth + 1) + [mid] + refine(mid, right, depth + 1)

    samples = [base[0]]
    for left, right in zip(base, base[1:]):
        samples.extend(refine(left, right, 0))
        samples.append(right)
    return Trajectory(tuple(samples), closed=True)


def _trace_logmags(cfg, tri, R, phi):
    tt = trace_coordinates(R, phi, tri, cfg.mu)
    return tt.logmags


def vertex_proximity(cfg, tri, R, phi, vertex_index):
    """How deep the point at angle phi sits in the vertex region of v_j.

    1 means both non-j trace coordinates are tied with the dominant one
    (the point is away from both adjacent intersection-point regimes); the
    score decays linearly as the nearer competitor falls into its
    fixed-depth log tube, hitting 0 at depth cfg.tube_depth.
    """
    m = _trace_logmags(cfg, tri, R, phi)
    top = max(m)
    if top <= math.log(cfg.near_infinity_threshold):
        raise NotNearInfinityError(
            f"traces are O(1) at R={R:g}; no neighbourhood of infinity"
        )
    others = [m[k] for k in range(3) if k != vertex_index - 1]
    gap = max(top - v for v in others)
    return 1.0 - min(1.0, gap / cfg.tube_depth)


def _crossing(cfg, tri, R, phi_s, vertex_index, threshold, direction, reach):
    """Distance from phi_s to the first proximity-threshold crossing in the
    given direction, bisected to 1e-6 rad.  None if no crossing in reach."""
    prox = lambda d: vertex_proximity(cfg, tri, R, phi_s + direction * d, vertex_index)
    n_scan = 64
    lo = 0.0
    hi = None
    for k in range(1, n_scan + 1):
        d = reach * k / n_scan
        if prox(d) < threshold:
            hi = d
            break
        lo = d
    if hi is None:
        return None
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if prox(mid) < threshold:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def transition_widths(cfg, R, vertex_threshold=None, triangle=None):
    """Width of the vertex-crossing window around each critical angle.

    For each critical angle (phi_a -> v1, phi_b -> v2, phi_c -> v3) this is
    the length of the maximal phi-interval on which vertex_proximity stays
    at or above the threshold, measured to 1e-6 rad by bisection.  Widths
    shrink like 1/sqrt(R): the tube depth is fixed while the log-magnitude
    gaps grow like 2 sqrt(R) times a slope linear in phi.
    """
    tri = triangle if triangle is not None else compute_triangle(cfg)
    threshold = cfg.vertex_threshold if vertex_threshold is None else vertex_threshold
    if not 0.0 < threshold < 1.0:
        raise ValueError("vertex_threshold must lie in (0, 1)")
    angles, _ = arc_decomposition(tri)
    crit = angles.as_tuple()

    widths = []
    for j, phi_s in enumerate(crit, start=1):
        if vertex_proximity(cfg, tri, R, phi_s, j) < threshold:
            raise NotNearInfinityError(
                f"no vertex interval at critical angle {phi_s:.6f} for R={R:g}"
            )
        width = 0.0
        for direction in (-1.0, 1.0):
            gaps = [
                math.remainder(direction * (other - phi_s), TAU) % TAU
                for other in crit
                if other != phi_s
            ]
            reach = 0.999 * min(gaps)
            extent = _crossing(cfg, tri, R, phi_s, j, threshold, direction, reach)
            if extent is None:
                raise NotNearInfinityError(
                    f"vertex interval at {phi_s:.6f} does not close before the "
                    f"adjacent critical angle; R={R:g} too small"
                )
            width += extent
        widths.append(width)
    return tuple(widths)


def _guard_bands(cfg, tri, decomposition):
    """Per-critical-angle guard radii: 10x the transition width measured at
    the smallest configured R, capped at a fraction of the adjacent arcs."""
    min_arc = min(arc.length for arc in decomposition.arcs)
    cap = _GUARD_ARC_CAP * min_arc
    if cfg.guard_band is not None:
        g = min(cfg.guard_band, cap)
        return {phi: g for phi in decomposition.angles.as_tuple()}
    R_min = min(cfg.R_values)
    try:
        widths = transition_widths(cfg, R_min, triangle=tri)
    except NotNearInfinityError:
        widths = (cap, cap, cap)
    return {
        phi: min(10.0 * w, cap)
        for phi, w in zip(decomposition.angles.as_tuple(), widths)
    }


def arc_edge_check(traj, decomposition, guards):
    """Classify trajectory samples by arc and check guarded ones land in
    the predicted closed edge (excluded barycentric coordinate exactly 0).

    Returns (checked, violations); a violation is (phi, arc label, bary).
    """
    angle_list = decomposition.angles.as_tuple()
    checked = 0
    violations = []
    for s in traj.samples:
        arc = decomposition.locate(s.phi)
        guard = max(guards[a] for a in _arc_endpoint_angles(arc, angle_list))
        if arc.clearance(s.phi) <= guard:
            continue
        checked += 1
        if s.nerve.bary[arc.side_index - 1] != 0.0:
            violations.append((s.phi, arc.label, s.nerve.bary))
    return checked, violations


def _arc_endpoint_angles(arc, angle_list):
    ends = []
    for phi in angle_list:
        if min((phi - arc.start) % TAU, (arc.end - phi) % TAU) < 1e-12:
            ends.append(phi)
    return ends or angle_list


@dataclass(frozen=True)
class RunReport:
    R: float
    winding: int
    critical_angles: tuple
    arc_edges: tuple
    min_margin: float
    transition_widths: tuple
    elapsed_ms: float
    guarded_samples: int = 0
    violations: tuple = ()


@dataclass(frozen=True)
class VerificationReport:
    t: complex
    runs: tuple
    smallest_passing_R: float = None

    @property
    def windings(self):
        return tuple(run.winding for run in self.runs)


def _min_margin(traj, decomposition, guards):
    """Smallest gap between the dominant and runner-up trace
    log-magnitudes over guarded samples."""
    angle_list = decomposition.angles.as_tuple()
    best = math.inf
    for s in traj.samples:
        arc = decomposition.locate(s.phi)
        guard = max(guards[a] for a in _arc_endpoint_angles(arc, angle_list))
        if arc.clearance(s.phi) <= guard:
            continue
        m = sorted(s.projective.logmags[1:], reverse=True)
        best = min(best, m[0] - m[1])
    return best


def verify_theorem(cfg):
    """Run the full certification for every configured R.

    For each R: the winding number of the induced nerve loop, the arc-edge
    correspondence on guard-banded samples (Int(I1) -> [v2 v3] and
    cyclically), the minimum dominance margin, and the transition widths.
    Raises TheoremViolationError on any mismatch or winding inconsistency
    unless guard_band is explicitly 0, which makes mismatches advisory.
    """
    tri = compute_triangle(cfg)
    angles, decomposition = arc_decomposition(tri)
    guards = _guard_bands(cfg, tri, decomposition)
    advisory = cfg.guard_band == 0.0

    runs = []
    for R in cfg.R_values:
        start = time.perf_counter()
        traj = run_trajectory(cfg, R, tri)
        winding = winding_number(traj)
        checked, violations = arc_edge_check(traj, decomposition, guards)
        widths = transition_widths(cfg, R, triangle=tri)
        elapsed_ms = 1000.0 * (time.perf_counter() - start)
        if violations and not advisory:
            phi0, label, bary = violations[0]
            raise TheoremViolationError(
                f"R={R:g}: {len(violations)} guarded samples leave the "
                f"predicted edge; first at phi={phi0:.6f} in {label}, "
                f"bary={bary}"
            )
        runs.append(
            RunReport(
                R=float(R),
                winding=winding,
                critical_angles=angles.as_tuple(),
                arc_edges=tuple(EDGE_FOR_ARC[j] for j in (1, 2, 3)),
                min_margin=_min_margin(traj, decomposition, guards),
                transition_widths=widths,
                elapsed_ms=elapsed_ms,
                guarded_samples=checked,
                violations=tuple(violations),
            )
        )

    windings = {run.winding for run in runs}
    if len(windings) != 1 or abs(next(iter(windings))) != 1:
        raise TheoremViolationError(
            f"windings {sorted(windings)} are not a consistent generator"
        )
    passing = [run.R for run in runs if not run.violations]
    smallest = min(passing) if passing else None
    return VerificationReport(cfg.t, tuple(runs), smallest)


def report_to_json(report):
    """Canonical JSON text for a verification report: an array with one
    object per R.  elapsed_ms is wall-clock time and is the only field that
    varies between identical runs."""
    payload = [
        {
            "t": [report.t.real, report.t.imag],
            "R": run.R,
            "winding": run.winding,
            "critical_angles": list(run.critical_angles),
            "arc_edges": list(run.arc_edges),
            "min_margin": run.min_margin,
            "transition_widths": list(run.transition_widths),
            "elapsed_ms": run.elapsed_ms,
        }
        for run in report.runs
    ]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_verification_json(report, path):
    Path(path).write_text(report_to_json(report), encoding="utf-8")


def _g17(x):
    return format(float(x), ".17g")


def write_trajectory_csv(traj, path):
    """Delimited trajectory samples with 17 significant digits."""
    lines = ["phi,l1,l2,l3,bary1,bary2,bary3,nerve_angle"]
    for s in traj.samples:
        l1, l2, l3 = s.projective.logmags[1:]
        b1, b2, b3 = s.nerve.bary
        lines.append(
            ",".join(_g17(v) for v in (s.phi, l1, l2, l3, b1, b2, b3, s.angle))
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
