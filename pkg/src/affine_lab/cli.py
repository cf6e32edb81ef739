"""``affine-lab`` command line.

Exit status: 0 when every check in the output passed, 1 when a check
failed, 2 on bad usage or invalid input.
"""
from __future__ import annotations

import argparse
import logging
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from . import __version__
from .affine import AffLine
from .energy import (
    DEFAULT_NAIVE_CAP,
    additive_energy,
    difference_ratio_energy,
    energy,
    energy_naive,
    multiplicative_energy_k,
)
from .experiments import (
    DEFAULT_PRECISION,
    SWEEP_KINDS,
    ExperimentReport,
    check_conjecture2,
    check_elekes,
    check_thm1_incidence,
    check_thm2,
    check_thm3,
    diag_thm3_report,
    sweep,
    sweep_csv,
)
from .expanders import EXPANDER_KINDS, growth_stats
from .families import FAMILY_KINDS, FamilySpec, build_family
from .generators import GEN_KINDS, GenSpec, dump_set, generate, parse_set_arg
from .geometry import LINE_AT_INFINITY, X_AXIS, Y_AXIS, PlanarLine, as_rational, format_rational
from .incidence import (
    InfiniteTraceError,
    PointSet,
    count_incidences,
    count_incidences_brute,
    directions,
    line_profile,
    rich_lines,
    trace_on_line,
)
from .projective import ProjTransform
from .serialize import (
    aff_line_json,
    dumps,
    load_lines,
    load_matrix,
    load_points,
    planar_line_json,
    point_json,
    proj_point_json,
    sorted_rationals,
)

log = logging.getLogger("affine_lab")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def parse_line_arg(text: str) -> PlanarLine:
    """``inf``, ``x-axis``, ``y-axis``, ``a,b,c`` (ax + by + c = 0) or
    ``aff:m,c`` (y = mx + c)."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "l_inf"):
        return LINE_AT_INFINITY
    if t == "x-axis":
        return X_AXIS
    if t == "y-axis":
        return Y_AXIS
    if t.startswith("aff:"):
        m, c = t[4:].split(",")
        return PlanarLine.of(as_rational(m), -1, as_rational(c))
    parts = t.split(",")
    if len(parts) != 3:
        raise UsageError(f"cannot parse line {text!r}")
    return PlanarLine.of(*map(as_rational, parts))


def _point_set(args) -> PointSet:
    if getattr(args, "points", None):
        return PointSet.from_points(load_points(args.points))
    if getattr(args, "a", None) is not None and getattr(args, "b", None) is not None:
        return PointSet.cartesian(parse_set_arg(args.a), parse_set_arg(args.b))
    if getattr(args, "a", None) is not None:
        A = parse_set_arg(args.a)
        return PointSet.cartesian(A, A)
    raise UsageError("give --points FILE or --a SET [--b SET]")


def _emit(args, payload, csv_rows: Optional[list[list]] = None) -> None:
    if args.out == "csv" and csv_rows is not None:
        sys.stdout.write("\n".join(",".join(str(v) for v in row) for row in csv_rows) + "\n")
    else:
        sys.stdout.write(dumps(payload))


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(obj, list):
        rows.append([prefix, ";".join(str(v) for v in obj)])
    else:
        rows.append([prefix, "" if obj is None else obj])


def _emit_report(args, report: ExperimentReport) -> int:
    data = report.to_json()
    rows = [["field", "value"]]
    for key in ("measured", "checks"):
        _flatten(key, data[key], rows)
    rows.append(["bound", data["bound"] or ""])
    rows.append(["ratio", data["ratio"] or ""])
    rows.append(["passed", data["passed"]])
    _emit(args, data, rows)
    return 0 if report.passed else 1


# ------------------------------------------------------------------ commands

def cmd_sets(args) -> int:
    spec = GenSpec(args.kind, n=args.n, start=as_rational(args.start), step=as_rational(args.step),
                   seed=args.seed, range_bound=args.range, path=args.path)
    text = dump_set(generate(spec)) + "\n"
    if args.out_path:
        with open(args.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_family(args) -> int:
    points = tuple(load_points(args.points)) if args.points else None
    spec = FamilySpec(args.kind, tuple(parse_set_arg(args.c)) if args.c else (),
                      tuple(parse_set_arg(args.d)) if args.d else (),
                      as_rational(args.lam), as_rational(args.mu), points)
    res = build_family(spec)
    payload = {
        "kind": spec.kind,
        "C": sorted_rationals(spec.C),
        "D": sorted_rationals(spec.D),
        "lambda": format_rational(spec.lam),
        "mu": format_rational(spec.mu),
        "size": len(res.lines),
        "admitted": res.admitted,
        "lines": [aff_line_json(l) for l in sorted(res.lines)],
        "skipped": [{"c": format_rational(c), "d": format_rational(d), "reason": r} for c, d, r in res.skipped],
        "collisions": [{"c": format_rational(c), "d": format_rational(d), "line": aff_line_json(l)}
                       for c, d, l in res.collisions],
    }
    rows = [["m", "c"]] + [[format_rational(l.m), format_rational(l.c)] for l in sorted(res.lines)]
    _emit(args, payload, rows)
    return 0


def cmd_energy(args) -> int:
    lines = load_lines(args.lines)
    if any(not isinstance(l, AffLine) for l in lines):
        raise UsageError("energy needs affine lines {m, c}")
    e = energy(lines)
    payload = {"lines": len(set(lines)), "energy": str(e)}
    ok = True
    if args.naive:
        naive = energy_naive(lines, cap=args.cap_naive)
        payload["energy_naive"] = str(naive)
        payload["agree"] = ok = naive == e
    _emit(args, payload, [["field", "value"]] + [[k, v] for k, v in payload.items()])
    return 0 if ok else 1


def cmd_energy_additive(args) -> int:
    A = parse_set_arg(args.a)
    payload = {"size": len(A), "additive_energy": str(additive_energy(A))}
    _emit(args, payload, [["field", "value"]] + [[k, v] for k, v in payload.items()])
    return 0


def cmd_energy_mult(args) -> int:
    A = parse_set_arg(args.a)
    payload = {"size": len(A), "k": args.k, "multiplicative_energy": str(multiplicative_energy_k(A, args.k))}
    _emit(args, payload, [["field", "value"]] + [[k, v] for k, v in payload.items()])
    return 0


def cmd_energy_ratio(args) -> int:
    A = parse_set_arg(args.a)
    payload = {"size": len(A), "ratio_energy_q": str(difference_ratio_energy(A))}
    _emit(args, payload, [["field", "value"]] + [[k, v] for k, v in payload.items()])
    return 0


def cmd_incidence(args) -> int:
    P = _point_set(args)
    lines = load_lines(args.lines)
    grouped = count_incidences(P, lines)
    brute = count_incidences_brute(P, lines)
    payload = {"points": len(P), "lines": len(set(lines)), "incidences": grouped,
               "incidences_brute": brute, "agree": grouped == brute}
    _emit(args, payload, [["field", "value"]] + [[k, v] for k, v in payload.items()])
    return 0 if grouped == brute else 1


def _profile_rows(profile) -> list[list]:
    return [["a", "b", "c", "multiplicity"]] + [[*l, m] for l, m in sorted(profile.items())]


def cmd_profile(args) -> int:
    prof = line_profile(_point_set(args))
    payload = {"lines": [{**planar_line_json(l), "multiplicity": m} for l, m in sorted(prof.items())]}
    _emit(args, payload, _profile_rows(prof))
    return 0


def cmd_rich(args) -> int:
    P = _point_set(args)
    prof = line_profile(P)
    rich = rich_lines(P, args.k, prof)
    sub = {l: prof[l] for l in rich}
    payload = {"k": args.k, "count": len(rich),
               "lines": [{**planar_line_json(l), "multiplicity": m} for l, m in sorted(sub.items())]}
    _emit(args, payload, _profile_rows(sub))
    return 0


def cmd_directions(args) -> int:
    dirs = sorted(directions(_point_set(args)))
    payload = {"count": len(dirs), "directions": [proj_point_json(d) for d in dirs]}
    _emit(args, payload, [["x", "y", "z"]] + [list(d) for d in dirs])
    return 0


def cmd_trace(args) -> int:
    P = _point_set(args)
    target = parse_line_arg(args.line)
    try:
        tr = sorted(trace_on_line(P, target))
    except InfiniteTraceError as exc:
        payload = {"line": planar_line_json(target), "infinite": True, "reason": str(exc)}
        _emit(args, payload, [["field", "value"], ["infinite", True]])
        return 0
    payload = {
        "line": planar_line_json(target),
        "infinite": False,
        "projective_count": len(tr),
        "affine_count": sum(1 for p in tr if p.z != 0),
        "points": [proj_point_json(p) for p in tr],
    }
    _emit(args, payload, [["x", "y", "z"]] + [list(p) for p in tr])
    return 0


def cmd_expander(args) -> int:
    A = parse_set_arg(args.a)
    values = EXPANDER_KINDS[args.kind](A)
    payload = {"kind": args.kind, "size_a": len(A), "size": len(values),
               "growth": growth_stats(A).to_json()}
    if not args.summary:
        payload["set"] = sorted_rationals(values)
    _emit(args, payload, [["value"]] + [[v] for v in sorted_rationals(values)])
    return 0


def cmd_project(args) -> int:
    T = ProjTransform.of(load_matrix(args.matrix))
    payload = {}
    rows = [["kind", "x_or_a", "y_or_b", "z_or_c"]]
    if args.points:
        pts = load_points(args.points)
        imgs = T.apply_points(pts)
        payload["points"] = [{"from": point_json(p), "to": proj_point_json(q)} for p, q in zip(pts, imgs)]
        rows += [["point", *q] for q in imgs]
    if args.lines:
        lines = [l if isinstance(l, PlanarLine) else PlanarLine.of(l.m, -1, l.c) for l in load_lines(args.lines)]
        imgs = [T.apply_line(l) for l in lines]
        payload["lines"] = [{"from": planar_line_json(l), "to": planar_line_json(q)} for l, q in zip(lines, imgs)]
        rows += [["line", *q] for q in imgs]
    if not payload:
        raise UsageError("give --points and/or --lines")
    _emit(args, payload, rows)
    return 0


def cmd_check_thm2(args) -> int:
    return _emit_report(args, check_thm2(parse_set_arg(args.c), parse_set_arg(args.d), as_rational(args.lam),
                                         as_rational(args.mu), proof_chain=not args.no_proof_chain,
                                         cap_naive=args.cap_naive, precision=args.precision))


def cmd_check_thm3(args) -> int:
    return _emit_report(args, check_thm3(parse_set_arg(args.c), parse_set_arg(args.d), as_rational(args.lam),
                                         as_rational(args.mu), cap_naive=args.cap_naive,
                                         precision=args.precision))


def cmd_check_thm1(args) -> int:
    A, B = parse_set_arg(args.a), parse_set_arg(args.b)
    if args.elekes:
        return _emit_report(args, check_elekes(A, B, precision=args.precision))
    if not args.lines:
        raise UsageError("check-thm1 needs --lines FILE or --elekes")
    lines = load_lines(args.lines)
    if any(not isinstance(l, AffLine) for l in lines):
        raise UsageError("check-thm1 needs affine lines {m, c}")
    return _emit_report(args, check_thm1_incidence(A, B, lines, precision=args.precision))


def cmd_check_conj2(args) -> int:
    P = _point_set(args)
    report = check_conjecture2(P, parse_line_arg(args.l1), parse_line_arg(args.l2),
                               window_policy=args.window_policy, precision=args.precision)
    return _emit_report(args, report)


def cmd_diag_thm3(args) -> int:
    return _emit_report(args, diag_thm3_report(parse_set_arg(args.c), parse_set_arg(args.d),
                                               as_rational(args.lam), as_rational(args.mu)))


def cmd_sweep(args) -> int:
    ns = [int(v) for v in args.ns.split(",")]
    window = None
    if args.window:
        lo, hi = args.window.split(",")
        window = (Decimal(lo), Decimal(hi))
    report = sweep(args.kind, ns, gen=args.gen, lam=None if args.lam is None else as_rational(args.lam),
                   mu=None if args.mu is None else as_rational(args.mu), seed=args.seed,
                   timing=args.timing, precision=args.precision, window=window,
                   progress=lambda r: log.info("n=%d measured=%d", r.n, r.measured))
    if args.out == "csv":
        sys.stdout.write(sweep_csv(report))
        if report.fit:
            log.info("fitted exponent %s", report.fit["exponent"])
    else:
        sys.stdout.write(dumps(report.to_json()))
    return 0 if report.passed else 1


# ------------------------------------------------------------------ parser

def _add_points(p) -> None:
    p.add_argument("--points", help="JSON file of points")
    p.add_argument("--a", help="x-coordinates of a grid (file, ap:s,d,n, gp:s,r,n, rand:n,R,seed or 1,2,3)")
    p.add_argument("--b", help="y-coordinates of a grid; defaults to --a")


def _add_cd(p, lam_default: str, mu_default: str) -> None:
    p.add_argument("--c", required=True, help="set C")
    p.add_argument("--d", required=True, help="set D")
    p.add_argument("--lambda", dest="lam", default=lam_default)
    p.add_argument("--mu", default=mu_default)


def _add_globals(p, default=argparse.SUPPRESS) -> None:
    # Registered on the top parser with real defaults and again on each
    # subcommand with SUPPRESS, so the flags work on either side.
    p.add_argument("--out", choices=("json", "csv"), default="json" if default is None else default,
                   help="output format")
    p.add_argument("--seed", type=int, default=0 if default is None else default)
    p.add_argument("--cap-naive", type=int, default=DEFAULT_NAIVE_CAP if default is None else default)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION if default is None else default,
                   help="significant digits for fractional-power bounds")
    p.add_argument("-v", "--verbose", action="store_true", default=False if default is None else default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _add_globals(parser, default=None)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common)
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = _add("sets", help="generate a scalar set")
    ssub = p.add_subparsers(dest="action", required=True)
    g = ssub.add_parser("gen")
    g.add_argument("--kind", choices=GEN_KINDS, required=True)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--start", default="1")
    g.add_argument("--step", default="1", help="difference (ap) or ratio (gp)")
    g.add_argument("--range", type=int, default=100, help="random_int draws from [1, range]")
    g.add_argument("--path", help="input file for kind explicit")
    g.add_argument("--out", dest="out_path", help="write the set here instead of stdout")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.set_defaults(func=cmd_sets)

    p = sub.add_parser("family", help="build a line family")
    p.add_argument("--kind", choices=FAMILY_KINDS, required=True)
    p.add_argument("--c")
    p.add_argument("--d")
    p.add_argument("--lambda", dest="lam", default="0")
    p.add_argument("--mu", default="0")
    p.add_argument("--points", help="point set for kind spanned")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("energy", help="affine line energy E(L)")
    p.add_argument("--lines", required=True)
    p.add_argument("--naive", action="store_true", help="also run the quadruple count")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("energy-additive")
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_energy_additive)
    p = sub.add_parser("energy-mult")
    p.add_argument("--a", required=True)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=cmd_energy_mult)
    p = sub.add_parser("energy-ratio")
    p.add_argument("--a", required=True)
    p.set_defaults(func=cmd_energy_ratio)

    p = sub.add_parser("incidence")
    _add_points(p)
    p.add_argument("--lines", required=True)
    p.set_defaults(func=cmd_incidence)
    p = sub.add_parser("profile")
    _add_points(p)
    p.set_defaults(func=cmd_profile)
    p = sub.add_parser("rich")
    _add_points(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_rich)
    p = sub.add_parser("directions")
    _add_points(p)
    p.set_defaults(func=cmd_directions)
    p = sub.add_parser("trace")
    _add_points(p)
    p.add_argument("--line", required=True, help="inf, x-axis, y-axis, a,b,c or aff:m,c")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("expander")
    p.add_argument("--kind", choices=sorted(EXPANDER_KINDS), required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--summary", action="store_true", help="omit the set itself")
    p.set_defaults(func=cmd_expander)

    p = sub.add_parser("project")
    p.add_argument("--matrix", required=True, help="3x3 JSON array of rational strings")
    p.add_argument("--points")
    p.add_argument("--lines")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("check-thm2")
    _add_cd(p, "1", "1")
    p.add_argument("--no-proof-chain", action="store_true")
    p.set_defaults(func=cmd_check_thm2)
    p = sub.add_parser("check-thm3")
    _add_cd(p, "0", "0")
    p.set_defaults(func=cmd_check_thm3)
    p = sub.add_parser("diag-thm3")
    _add_cd(p, "0", "0")
    p.set_defaults(func=cmd_diag_thm3)

    p = sub.add_parser("check-thm1")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--lines")
    p.add_argument("--elekes", action="store_true", help="use (A+A) x (AB) with lines y = c(x - d)")
    p.set_defaults(func=cmd_check_thm1)

    p = sub.add_parser("check-conj2")
    _add_points(p)
    p.add_argument("--l1", required=True)
    p.add_argument("--l2", required=True)
    p.add_argument("--window-policy", choices=("warn", "error"), default="warn")
    p.set_defaults(func=cmd_check_conj2)

    p = sub.add_parser("sweep")
    p.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    p.add_argument("--ns", required=True, help="comma separated sizes")
    p.add_argument("--gen", choices=("ap", "gp", "rand"), default="ap")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (reports then differ run to run)")
    p.add_argument("--window", help="lo,hi: fail unless the fitted exponent lies inside")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"affine-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
