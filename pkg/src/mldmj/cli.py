"""``mld``: command-line front end.

Exit codes: 0 ok, 1 verify failure, 2 parse, 3 dimension, 4 point,
5 budget, 6 characteristic, 7 normalization.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from .classify import DEFAULT_TRUNC, classify_curve, classify_surface_double, dispatch_surface
from .errors import MldError, ParseError, ResourceLimit
from .fixtures import GROUPS, revalidate, run_fixtures
from .groebner import DEFAULT_BUDGET
from .jets import at_origin, embedding_dimension, mld_via_jets
from .newton import contains_one, mld_polygon, polygon_from_points, polygon_from_support
from .probe import probe
from .ring import infer_vars, multiplicity, parse_poly

SCHEMA = "mld-report/1"


# ---------------------------------------------------------------------------
# argument helpers


def parse_points(text: str) -> list:
    groups = re.findall(r"\(([^()]*)\)", text)
    if not groups:
        raise ParseError(f"expected points like (2,0,0),(0,3,0): {text!r}")
    try:
        return [tuple(int(a) for a in g.split(",")) for g in groups]
    except ValueError as e:
        raise ParseError(f"bad exponent vector in {text!r}") from e


def parse_rational_point(text: str | None):
    if text is None:
        return None
    try:
        return tuple(Fraction(a.strip()) for a in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad point {text!r}") from e


_SPARE_NAMES = "x,y,z,w,v,u,t,s".split(",")


def _polys(args, dim: int | None = None) -> list:
    """Parse the ``-f`` generators.

    Without ``--vars`` the variables are inferred; when a dimension is given
    and fewer than ``dim + #generators`` names occur, spare names are added so
    that e.g. ``-f z -d 2`` means the plane ``z = 0`` in three-space.
    """
    texts = [t for chunk in (args.f or []) for t in chunk.split(";") if t.strip()]
    if not texts:
        raise ParseError("no polynomial given (use -f)")
    if args.vars:
        vars_ = tuple(v.strip() for v in args.vars.split(","))
    else:
        names = list(infer_vars(texts))
        spare = (v for v in _SPARE_NAMES if v not in names)
        while dim is not None and len(names) < dim + len(texts):
            names.append(next(spare))
        vars_ = tuple(sorted(names))
    return [parse_poly(t, vars_, args.char) for t in texts]


def _input_echo(args) -> dict:
    poly = "; ".join(args.f) if getattr(args, "f", None) else getattr(args, "gens", None)
    point = [str(a) for a in parse_rational_point(args.point)] if getattr(args, "point", None) \
        else None
    return {"poly": poly, "char": args.char, "point": point}


def _report(args, route: str, result, extra: dict | None = None, t0: float = 0.0) -> dict:
    d = {"schema": SCHEMA, "input": _input_echo(args), "route": route}
    d.update(result.to_json())
    d.setdefault("s_profile", [])
    if extra:
        d.update(extra)
    d["seconds"] = round(time.perf_counter() - t0, 3)
    return d


def _print_text(rep: dict, out):
    print(f"route: {rep['route']}", file=out)
    if rep.get("class"):
        print(f"class: {rep['class']}", file=out)
    for key in ("vertices", "contains_one", "embedding_dimension"):
        if key in rep:
            print(f"{key.replace('_', ' ')}: {rep[key]}", file=out)
    if rep.get("s_profile"):
        prof = ", ".join(f"s_{e['m']}={e['s'] if e['s'] is not None else '?'}"
                         for e in rep["s_profile"])
        print(f"s profile: {prof}", file=out)
    print(f"mld_MJ: {rep['mld']}" + ("" if rep["certified"] else " (upper bound, uncertified)"),
          file=out)
    cert = rep.get("certificate")
    if cert:
        print("certificate: " + ", ".join(f"{k}={v}" for k, v in cert.items() if k != "kind")
              + f" [{cert['kind']}]", file=out)
    if rep.get("nu_upper") is not None:
        print(f"nu upper bound: {rep['nu_upper']}", file=out)
    if rep.get("note"):
        print(f"note: {rep['note']}", file=out)


def _emit(args, rep: dict, out):
    if args.json:
        print(json.dumps(rep), file=out)
    else:
        _print_text(rep, out)


# ---------------------------------------------------------------------------
# commands


def cmd_newton(args, out) -> int:
    t0 = time.perf_counter()
    if args.gens:
        P = polygon_from_points(parse_points(args.gens))
    else:
        polys = _polys(args)
        if len(polys) != 1:
            raise ParseError("newton takes a single polynomial")
        P = polygon_from_support(polys[0])
    r = mld_polygon(P)
    revalidate(P, r)
    rep = _report(args, "newton", r, {"vertices": [list(v) for v in P.vertices],
                                      "contains_one": contains_one(P)}, t0)
    _emit(args, rep, out)
    return 0


def cmd_jets(args, out) -> int:
    t0 = time.perf_counter()
    gens = _polys(args, args.d)
    n = gens[0].nvars
    d = args.d if args.d is not None else n - len(gens)
    if d < 0 or d > n:
        raise ParseError(f"dimension {d} is impossible in {n}-space")
    point = parse_rational_point(args.point)
    try:
        r = mld_via_jets(gens, n, d, point, args.bound, args.budget)
        code = 0
    except ResourceLimit as e:
        if e.partial is None:
            raise
        r, code = e.partial, 5
    rep = _report(args, "jets", r, {"dimension": d}, t0)
    if code:
        rep["budget_status"] = "exceeded"
    _emit(args, rep, out)
    return code


def cmd_classify(args, out) -> int:
    t0 = time.perf_counter()
    gens = _polys(args)
    point = parse_rational_point(args.point)
    n = gens[0].nvars
    extra = {}
    if n == 2 and len(gens) == 1:
        r = classify_curve(gens[0], point)
        extra["kind"] = "curve"
    else:
        extra["kind"] = "surface"
        local = at_origin(gens, point)
        extra["embedding_dimension"] = embedding_dimension(local)
        if n == 3 and len(local) == 1 and multiplicity(local[0]) == 2 \
                and extra["embedding_dimension"] == 3:
            r, sc = classify_surface_double(local[0], args.trunc)
            extra["surface_class"] = sc.to_json()
        else:
            r = dispatch_surface(local, trunc=args.trunc, bound=args.bound, budget=args.budget)
    rep = _report(args, "classify", r, extra, t0)
    _emit(args, rep, out)
    return 0


def cmd_verify(args, out) -> int:
    outcomes = run_fixtures(args.filter)
    failed = [o for o in outcomes if not o.passed]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "fixtures": [
            {"name": o.name, "group": o.group, "passed": o.passed, "detail": o.detail}
            for o in outcomes], "passed": not failed}), file=out)
    else:
        for o in outcomes:
            print(f"{'PASS' if o.passed else 'FAIL'} {o.name}: {o.detail}", file=out)
        if failed:
            print(f"first failing fixture: {failed[0].name}", file=out)
        else:
            print(f"all fixtures pass ({len(outcomes)})", file=out)
    return 1 if failed else 0


def cmd_probe(args, out) -> int:
    s = probe(args.dim, args.samples, args.degree, args.char, args.seed)
    rep = {"schema": SCHEMA, **s.to_json()}
    if args.json:
        print(json.dumps(rep), file=out)
    else:
        print(f"seed {s.seed}: dim {s.dim}, {s.tested} samples tested, {s.skipped} skipped",
              file=out)
        hist = ", ".join(f"m={k}: {v}" for k, v in rep["level_histogram"].items())
        print(f"minimizing level histogram: {hist}", file=out)
        if s.dim == 2:
            print(f"implied level beyond 41 (inconclusive): {s.beyond_bound}", file=out)
        print(f"counterexamples: {len(s.refutations)}", file=out)
        for ref in s.refutations:
            print(f"  {ref}", file=out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mld", description="Mather-Jacobian minimal log "
                                 "discrepancies via jets, Newton polygons and classification.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", action="append", metavar="POLY",
                        help="polynomial; repeat or separate with ';' for several generators")
    common.add_argument("--vars", help="comma-separated variable names (default: inferred)")
    common.add_argument("--char", type=int, default=0, help="0 or a prime")
    common.add_argument("--point", help="rational point a,b,c (default: origin)")
    common.add_argument("--bound", type=int, default=None, help="highest jet level")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC, help="power-series truncation")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner step budget")
    common.add_argument("--json", action="store_true", help="emit JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("newton", parents=[common], help="toric mld of a Newton polygon")
    p.add_argument("--gens", help="generators as (a,b,c),(d,e,f)")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("jets", parents=[common], help="s_m profile and jet verdict")
    p.add_argument("-d", type=int, default=None, help="dimension of X (default N - #gens)")
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("classify", parents=[common], help="curve or surface classification")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="replay the fixture corpus")
    p.add_argument("--filter", choices=GROUPS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", help="random sampling of the bounded-level conjecture")
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_probe)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "newton" and not args.gens and not args.f:
        print("error: newton needs -f or --gens", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except MldError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
