"""Numerical certification of the boundary-nerve winding for the
four-punctured-sphere character variety.

The pipeline: elliptic half-period integrals of dz/sqrt(z(z-1)(z-t)) over
keyhole loops -> the period triangle and its rotating-triangle dominance
arcs -> overflow-safe asymptotic trace coordinates -> the induced loop in
the boundary nerve of the divisor at infinity, certified to generate
pi_1(S^1).
"""

from .contour import (
    BranchState,
    CircleArc,
    LineSegment,
    ParamPath,
    PunctureConfig,
    integrate_branch_tracked,
    make_puncture_loop,
)
from .errors import (
    AmbiguousPointError,
    DegenerateTriangleError,
    GeometryError,
    InvalidNervePointError,
    NerveWindError,
    NotNearInfinityError,
    QuadratureError,
    TheoremViolationError,
    UndersampledError,
)
from .nerve import (
    NERVE,
    NervePoint,
    Trajectory,
    nerve_angle,
    partition_of_unity,
    winding_from_angles,
    winding_number,
)
from .periods import HalfPeriods, PeriodTriangle, half_periods, period_triangle
from .pipeline import (
    ExperimentConfig,
    VerificationReport,
    run_trajectory,
    transition_widths,
    verify_theorem,
    write_trajectory_csv,
    write_verification_json,
)
from .rotation import (
    ArcDecomposition,
    CriticalAngles,
    arc_decomposition,
    critical_angle,
    dominant_side,
)
from .traces import (
    LogComplex,
    MuProfile,
    ProjectivePoint,
    TraceTriple,
    cosh_log,
    fricke_residual,
    projective_normalize,
    trace_coordinates,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPointError",
    "ArcDecomposition",
    "BranchState",
    "CircleArc",
    "CriticalAngles",
    "DegenerateTriangleError",
    "ExperimentConfig",
    "GeometryError",
    "HalfPeriods",
    "InvalidNervePointError",
    "LineSegment",
    "LogComplex",
    "MuProfile",
    "NERVE",
    "NerveWindError",
    "NervePoint",
    "NotNearInfinityError",
    "ParamPath",
    "PeriodTriangle",
    "ProjectivePoint",
    "PunctureConfig",
    "QuadratureError",
    "TheoremViolationError",
    "TraceTriple",
    "Trajectory",
    "UndersampledError",
    "VerificationReport",
    "arc_decomposition",
    "cosh_log",
    "critical_angle",
    "dominant_side",
    "fricke_residual",
    "half_periods",
    "integrate_branch_tracked",
    "make_puncture_loop",
    "nerve_angle",
    "partition_of_unity",
    "period_triangle",
    "projective_normalize",
    "run_trajectory",
    "trace_coordinates",
    "transition_widths",
    "verify_theorem",
    "winding_from_angles",
    "winding_number",
    "write_trajectory_csv",
    "write_verification_json",
]
