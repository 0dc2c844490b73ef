"""Command-line interface.

Subcommands: periods, angles, trajectory, verify, widths.  Exit codes:
0 success, 2 geometry/degeneracy error, 3 undersampled, 4 theorem-violation
diagnostic.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import (
    AmbiguousPointError,
    DegenerateTriangleError,
    GeometryError,
    InvalidNervePointError,
    NotNearInfinityError,
    QuadratureError,
    TheoremViolationError,
    UndersampledError,
)
from .nerve import winding_number
from .periods import half_periods, period_triangle
from .pipeline import (
    ExperimentConfig,
    compute_triangle,
    run_trajectory,
    transition_widths,
    verify_theorem,
    write_trajectory_csv,
    write_verification_json,
)
from .rotation import arc_decomposition
from .traces import MuProfile

EXIT_GEOMETRY = 2
EXIT_UNDERSAMPLED = 3
EXIT_VIOLATION = 4

_GEOMETRY_ERRORS = (
    GeometryError,
    DegenerateTriangleError,
    QuadratureError,
    NotNearInfinityError,
    AmbiguousPointError,
    InvalidNervePointError,
)


def _complex_arg(text):
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected RE,IM, got {text!r}"
        ) from exc


def _float_list_arg(text):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected X1,X2,..., got {text!r}") from exc


def _mu_arg(text):
    try:
        return MuProfile.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _fmt(value):
    if isinstance(value, complex):
        return f"{value.real:.12g}{value.imag:+.12g}i"
    return f"{value:.12g}"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nervewind",
        description=(
            "Half-period triangles of the double cover branched at "
            "{0, 1, t, inf}, asymptotic trace coordinates, and winding "
            "certification on the boundary nerve."
        ),
    )
    parser.add_argument("--version", action="version", version="nervewind 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_z0=True, with_tol=True):
        p.add_argument("--t", type=_complex_arg, default=None, help="puncture t as RE,IM")
        p.add_argument("--config", default=None, help="JSON config file")
        if with_z0:
            p.add_argument("--z0", type=_complex_arg, default=None, help="basepoint RE,IM")
        if with_tol:
            p.add_argument("--tol", type=float, default=None, help="quadrature tolerance")

    p = sub.add_parser("periods", help="half-period integrals and the period triangle")
    add_common(p)

    p = sub.add_parser("angles", help="critical angles and dominance arcs")
    add_common(p)

    p = sub.add_parser("trajectory", help="sample the nerve loop at one radius")
    add_common(p)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--mu", type=_mu_arg, default=None, help="zero | const:M0,M1,MT | random:SEED")
    p.add_argument("--out", default=None, help="CSV output file")
    p.add_argument("--svg", default=None, help="figure output file")

    p = sub.add_parser("verify", help="winding certification over an R sweep")
    add_common(p)
    p.add_argument("--R-list", type=_float_list_arg, default=None, help="R1,R2,...")
    p.add_argument("--mu", type=_mu_arg, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--json", dest="json_path", default=None, help="JSON report file")

    p = sub.add_parser("widths", help="transition widths around the critical angles")
    add_common(p)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--threshold", type=float, default=None, help="vertex threshold in (0,1)")
    return parser


def _config_from_args(args, **overrides):
    if getattr(args, "config", None):
        cfg = ExperimentConfig.from_json_file(args.config)
    else:
        cfg = ExperimentConfig()
    updates = {}
    if getattr(args, "t", None) is not None:
        updates["t"] = args.t
    if getattr(args, "z0", None) is not None:
        updates["z0"] = args.z0
    if getattr(args, "tol", None) is not None:
        updates["tol"] = args.tol
    if getattr(args, "samples", None) is not None:
        updates["samples"] = args.samples
    if getattr(args, "mu", None) is not None:
        updates["mu"] = args.mu
    updates.update({k: v for k, v in overrides.items() if v is not None})
    return replace(cfg, **updates) if updates else cfg


def _cmd_periods(args):
    cfg = _config_from_args(args)
    hp = half_periods(cfg.t, cfg.z0, cfg.tol)
    tri = period_triangle(hp)
    print(f"t        = {_fmt(cfg.t)}")
    print(f"basepoint = {_fmt(hp.basepoint)}")
    for name, value in (("pi_0", hp.pi0), ("pi_1", hp.pi1), ("pi_t", hp.pit)):
        print(f"{name}     = {_fmt(value)}")
    for name, value in (("a", tri.a), ("b", tri.b), ("c", tri.c)):
        print(f"side {name}   = {_fmt(value)}")
    print(f"|Im(b/a)| = {_fmt(abs((tri.b / tri.a).imag))}")
    return 0


def _cmd_angles(args):
    cfg = _config_from_args(args)
    tri = compute_triangle(cfg)
    angles, decomposition = arc_decomposition(tri)
    print(f"phi_a = {_fmt(angles.phi_a)}")
    print(f"phi_b = {_fmt(angles.phi_b)}")
    print(f"phi_c = {_fmt(angles.phi_c)}")
    for arc in decomposition.arcs:
        print(
            f"{arc.label}: [{_fmt(arc.start)}, {_fmt(arc.end)}] "
            f"(length {_fmt(arc.length)})"
        )
    return 0


def _cmd_trajectory(args):
    cfg = _config_from_args(args)
    traj = run_trajectory(cfg, args.R)
    winding = winding_number(traj)
    print(f"samples = {len(traj.samples)}")
    print(f"winding = {winding:+d}")
    csv_path = args.out or cfg.csv_path
    svg_path = args.svg or cfg.svg_path
    if csv_path:
        write_trajectory_csv(traj, csv_path)
        print(f"wrote {csv_path}")
    if svg_path:
        from .plotting import render_trajectory_figure

        render_trajectory_figure(
            traj,
            svg_path,
            title=f"t = {_fmt(cfg.t)}, R = {args.R:g}, winding {winding:+d}",
        )
        print(f"wrote {svg_path}")
    return 0


def _cmd_verify(args):
    cfg = _config_from_args(args, R_values=getattr(args, "R_list", None))
    report = verify_theorem(cfg)
    for run in report.runs:
        widths = ", ".join(_fmt(w) for w in run.transition_widths)
        print(
            f"R = {run.R:g}: winding {run.winding:+d}, "
            f"min margin {_fmt(run.min_margin)}, widths [{widths}], "
            f"{run.elapsed_ms:.1f} ms"
        )
    print(f"windings consistent: {report.windings}")
    if report.smallest_passing_R is not None:
        print(f"smallest R passing all checks: {report.smallest_passing_R:g}")
    json_path = args.json_path or cfg.json_path
    if json_path:
        write_verification_json(report, json_path)
        print(f"wrote {json_path}")
    return 0


def _cmd_widths(args):
    cfg = _config_from_args(args)
    widths = transition_widths(cfg, args.R, vertex_threshold=args.threshold)
    for name, w in zip(("phi_a", "phi_b", "phi_c"), widths):
        print(f"width at {name} = {_fmt(w)}")
    return 0


_COMMANDS = {
    "periods": _cmd_periods,
    "angles": _cmd_angles,
    "trajectory": _cmd_trajectory,
    "verify": _cmd_verify,
    "widths": _cmd_widths,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UndersampledError as exc:
        print(f"undersampled: {exc}", file=sys.stderr)
        return EXIT_UNDERSAMPLED
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except _GEOMETRY_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
