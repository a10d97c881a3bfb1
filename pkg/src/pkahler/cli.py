"""Command-line entry point: ``pkahler <subcommand> [options]``.

Exit codes: 0 success / all checks pass, 1 a check failed or a domain error
occurred, 2 usage error. Every global option can also be set through an
environment variable named ``PKAHLER_<OPTION>`` (for example
``PKAHLER_K=2`` or ``PKAHLER_SEED=7``); explicit flags win.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import actions, checks, curvature, fibration, geometry, hamilton
from .exceptions import DomainError, NotCanonicalIsometryError
from .profile import Profile

ENV_PREFIX = "PKAHLER_"


class UsageError(Exception):
    pass


def _env(name, default):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def _floats(text, n=None):
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _grid(text):
    """``start:stop:n`` -> numpy linspace; a single number gives a one-point grid."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            n = int(parts[2])
            if n < 1:
                raise ValueError
            return np.linspace(float(parts[0]), float(parts[1]), n)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"grid must be start:stop:n with n >= 1, got {text!r}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--profile", choices=("linear", "quadratic", "table"), default=_env("profile", "linear"))
    g.add_argument("--k", type=float, default=float(_env("k", 1.0)), help="profile parameter k > 0")
    g.add_argument("--table", default=_env("table", None), help="profile table for --profile table")
    g.add_argument("--seed", type=int, default=int(_env("seed", 42)))
    g.add_argument("--out", default=_env("out", None), help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json"), default=_env("format", None))
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="pkahler", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the invariant suite")
    c.add_argument("--samples", type=int, default=int(_env("samples", 50)))

    c = sub.add_parser("curvature", parents=[common], help="closed-form vs numeric curvature at (i, u)")
    c.add_argument("--u-grid", type=_grid, default=_grid("0:3:13"))

    c = sub.add_parser("scan-bound", parents=[common], help="scan scal < 1 for f(t) = -kt")
    c.add_argument("--u-grid", type=_grid, default=_grid("0.1:5:50"))
    c.add_argument("--y-grid", type=_grid, default=_grid("1"))
    c.add_argument("--x-grid", type=_grid, default=_grid("0"))

    c = sub.add_parser("darboux", parents=[common], help="lagrangianize sections and verify the Darboux chart")
    c.add_argument("--b1-range", type=_grid, default=_grid("-3:-0.3:10"))
    c.add_argument("--b2-range", type=_grid, default=_grid("-4:4:10"))
    c.add_argument("--b1-ref", type=float, default=-1.0)

    c = sub.add_parser("flow", parents=[common], help="RK4 trajectory of a Hamiltonian field")
    c.add_argument("--hamiltonian", choices=("h1", "h2"), default="h1")
    c.add_argument("--time", type=float, default=1.0)
    c.add_argument("--steps", type=int, default=200)
    c.add_argument("--start", type=lambda s: _floats(s, 4), default=[0.0, 1.0, 1.0, 0.0])

    c = sub.add_parser("isometry", parents=[common], help="verify or recover isometry elements")
    c.add_argument("action", choices=("verify", "recover"))
    c.add_argument("--moebius", type=lambda s: _floats(s, 4), default=[1.0, 0.0, 0.0, 1.0])
    c.add_argument("--theta", type=float, default=0.0)
    c.add_argument("--flip1", action="store_true")
    c.add_argument("--flip2", action="store_true")
    c.add_argument("--samples", type=int, default=50)
    return parser


def make_profile(args):
    if args.profile == "table":
        if not args.table:
            raise UsageError("--profile table needs --table PATH")
        try:
            return Profile.from_table(args.table)
        except OSError as exc:
            raise UsageError(f"cannot read profile table: {exc}") from None
    try:
        return Profile.builtin(args.profile, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- output


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def render(payload, fmt):
    """JSON (sorted keys) or CSV (17 significant digits) text for a dict or list of dicts."""
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    rows = payload if isinstance(payload, list) else [payload]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) if not isinstance(row[k], list) else " ".join(map(_fmt, row[k]))
                         for k in header])
    return buf.getvalue()


def emit(payload, args, default_fmt):
    text = render(payload, args.format or default_fmt)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_check(args):
    profile = make_profile(args)
    records = checks.run_suite(profile, seed=args.seed, n_points=args.samples)
    emit(records, args, "json")
    failed = [r["invariant"] for r in records if not r["pass"]]
    for name in failed:
        print(f"FAIL {name}", file=sys.stderr)
    return 1 if failed else 0


def cmd_curvature(args):
    profile = make_profile(args)
    rows = []
    for u in args.u_grid:
        u = float(u)
        R = curvature.ricci_closed(u, profile)
        rows.append({
            "u": u,
            "scal_closed": curvature.scalar_closed(u, profile),
            "scal_numeric": curvature.scalar_numeric_full([0.0, 1.0, u, 0.0], profile),
            "ricci_zz": R.zz,
            "ricci_ww": R.ww,
            "ricci_zw_re": R.zw.real,
            "ricci_zw_im": R.zw.imag,
            "scal_traced": curvature.scalar_traced(u, profile),
        })
    emit(rows, args, "csv")
    return 0


def cmd_scan_bound(args):
    if not args.k > 0:
        raise UsageError(f"--k must be positive, got {args.k!r}")
    if not np.any(args.u_grid != 0):
        raise UsageError("--u-grid needs at least one nonzero u")
    rep = curvature.bound_scan(args.k, args.u_grid, args.y_grid, args.x_grid)
    payload = {
        "k": rep.k,
        "max_scal": rep.max_scal,
        "argmax": list(rep.argmax) if rep.argmax else None,
        "zero_slice_max_deviation": rep.zero_slice_max_deviation,
        "max_scal_traced": rep.max_scal_traced,
        "pass": rep.passed,
    }
    emit(payload, args, "json")
    return 0 if rep.passed else 1


def cmd_darboux(args):
    profile = make_profile(args)
    rng = np.random.default_rng(args.seed)
    naive = fibration.SectionHandle("naive", args.b1_ref)
    sec = fibration.SectionHandle("lagrangianized", args.b1_ref)
    grid = [(float(b1), float(b2)) for b1 in args.b1_range for b2 in args.b2_range]
    max_naive = max(abs(fibration.section_defect(naive, b, profile)) for b in grid)
    max_lagr = max(abs(fibration.section_defect(sec, b, profile)) for b in grid)
    max_res = 0.0
    for b in grid:
        c = (rng.uniform(0.0, 2 * math.pi), b[0], rng.uniform(-1.0, 1.0), b[1])
        p = fibration.chart_inverse(c, sec, profile)
        max_res = max(max_res, fibration.darboux_residual(fibration.darboux_matrix(p, sec, profile)))
    payload = {
        "grid": {
            "b1": [float(args.b1_range[0]), float(args.b1_range[-1]), len(args.b1_range)],
            "b2": [float(args.b2_range[0]), float(args.b2_range[-1]), len(args.b2_range)],
            "b1_ref": args.b1_ref,
        },
        "max_naive_defect": max_naive,
        "max_lagr_defect": max_lagr,
        "max_darboux_residual": max_res,
        "pass": bool(max_lagr <= 1e-5 and max_res <= 1e-4),
    }
    emit(payload, args, "json")
    return 0 if payload["pass"] else 1


def cmd_flow(args):
    profile = make_profile(args)
    if args.steps < 1:
        raise UsageError("--steps must be positive")
    field = lambda q: hamilton.field_closed_form(q, args.hamiltonian)
    nodes = hamilton.trajectory(args.start, field, args.time, args.steps)
    ts = np.linspace(0.0, args.time, args.steps + 1)
    rows = []
    for t, q in zip(ts, nodes):
        x, y, u, v = (float(c) for c in q)
        rows.append({"t": float(t), "x": x, "y": y, "u": u, "v": v,
                     "H1": hamilton.h1(q, profile), "H2": hamilton.h2(q, profile)})
    emit(rows, args, "csv")
    return 0


def _element(args):
    try:
        A = actions.sl2(*args.moebius)
    except ValueError as exc:
        raise UsageError(f"--moebius: {exc}") from None
    return actions.IsometryElement(A, args.theta % (2 * math.pi), args.flip1, args.flip2)


def _element_dict(e):
    return {"moebius": [float(c) for c in e.A.ravel()], "theta": float(e.theta),
            "flip1": bool(e.flip1), "flip2": bool(e.flip2)}


def cmd_isometry(args):
    profile = make_profile(args)
    e = _element(args)
    rng = np.random.default_rng(args.seed)
    if args.action == "verify":
        samples = geometry.random_points(rng, args.samples)
        res = actions.isometry_residual(e, samples, profile)
        payload = dict(_element_dict(e), residual=res, tolerance=1e-7, **{"pass": res <= 1e-7})
    else:
        # the element is only reachable through the closure below
        black_box = lambda q: actions.isometry_apply(e, q)
        try:
            got = actions.recover_parameters(black_box, rng=rng)
        except NotCanonicalIsometryError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        err = actions.parameter_error(e, got)
        payload = dict(_element_dict(got), parameter_error=err, **{"pass": err <= 1e-6})
    emit(payload, args, "json")
    return 0 if payload["pass"] else 1


COMMANDS = {
    "check": cmd_check,
    "curvature": cmd_curvature,
    "scan-bound": cmd_scan_bound,
    "darboux": cmd_darboux,
    "flow": cmd_flow,
    "isometry": cmd_isometry,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pkahler: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ArithmeticError) as exc:
        print(f"pkahler: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
