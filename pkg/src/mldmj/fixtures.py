"""Reference fixtures replayed by ``mld verify`` and the acceptance tests.

Each fixture recomputes its answer and re-checks the certificate it gets
back instead of trusting the library's own validation.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .classify import classify_curve, classify_surface_double, dispatch_surface
from .jets import mld_via_jets
from .newton import (contains_one, mld_polygon, pairing_min, polygon_from_points,
                     polygon_from_support, toric_log_discrepancy)
from .nondegen import is_nondegenerate
from .results import MINUS_INF, ToricCovector, ClassLabel
from .ring import parse_poly

GROUPS = ("newton", "curves", "surfaces", "cases", "nondegen")


@dataclass(frozen=True)
class Fixture:
    name: str
    group: str
    check: Callable[[], str]     # returns a short detail line, raises AssertionError on mismatch


@dataclass(frozen=True)
class Outcome:
    name: str
    group: str
    passed: bool
    detail: str
    seconds: float


def _expect(cond: bool, msg: str):
    if not cond:
        raise AssertionError(msg)


def revalidate(f_or_polygon, result) -> None:
    """Recompute ``<p,1> - <p,Gamma>`` for a covector certificate and compare with the value."""
    cert = result.certificate
    if not isinstance(cert, (ToricCovector, ClassLabel)) or getattr(cert, "p", None) is None:
        return
    P = f_or_polygon
    if not hasattr(P, "vertices"):
        P = polygon_from_support(P)
    if len(cert.p) != P.dim_ambient:
        return
    val = pairing_min(P, cert.p)
    _expect(val == cert.val, f"certificate val {cert.val} but <p,Gamma> = {val}")
    _expect(sum(cert.p) - 1 == cert.kE, "kE must equal <p,1> - 1")
    ld = toric_log_discrepancy(P, cert.p)
    if result.value == MINUS_INF:
        _expect(ld < 0, f"covector {cert.p} gives {ld}, not negative")
    else:
        _expect(ld == result.value, f"covector {cert.p} gives {ld}, expected {result.value}")


# ---------------------------------------------------------------------------

EXAMPLE_POLYGONS = [
    ("gamma1", [(2, 0, 0), (0, 5, 0), (0, 0, 5)], (5, 2, 2), 9, 10),
    ("gamma2", [(2, 0, 0), (0, 3, 0), (0, 0, 7)], (21, 14, 6), 41, 42),
    ("gamma3", [(2, 0, 0), (0, 3, 1), (0, 0, 5)], (15, 8, 6), 29, 30),
    ("gamma4", [(2, 0, 0), (0, 4, 0), (0, 0, 5)], (10, 5, 4), 19, 20),
]


def _polygon_fixture(gens, p, one, val):
    def check():
        P = polygon_from_points(gens)
        _expect(sum(p) == one, f"<p,1> = {sum(p)}, expected {one}")
        _expect(pairing_min(P, p) == val, f"<p,Gamma> = {pairing_min(P, p)}, expected {val}")
        _expect(not contains_one(P), "1 should lie outside Gamma")
        r = mld_polygon(P)
        _expect(r.value == MINUS_INF, f"mld Gamma = {r.value}, expected -inf")
        revalidate(P, r)
        return f"p={p}: {one} vs {val}; optimizer witness {r.certificate.p}"
    return check


def _newton_value(text, vars_, value):
    def check():
        P = polygon_from_support(parse_poly(text, vars_))
        r = mld_polygon(P)
        _expect(r.value == value, f"mld = {r.value}, expected {value}")
        revalidate(P, r)
        return f"mld = {value}, p = {r.certificate.p}"
    return check


CURVES = [
    ("x*y", 0, "E1", 1, 2),
    ("x^2-y^3", MINUS_INF, "E3", 4, None),
    ("x^3+y^3", MINUS_INF, "E1", 1, None),
    ("x-y^2", 1, "E1", 1, 1),
]


def _curve_fixture(text, value, div, kE, val):
    def check():
        f = parse_poly(text, "x,y")
        r = classify_curve(f)
        _expect(r.value == value and r.certified, f"classifier gave {r.value}, expected {value}")
        c = r.certificate
        _expect(c.description.startswith(div) and c.kE == kE,
                f"certificate {c.description} k={c.kE}, expected {div} k={kE}")
        if val is not None:
            _expect(c.val == val, f"val {c.val}, expected {val}")
        j = mld_via_jets([f], 2, 1, None, 5)
        _expect(j.value == value and j.certified, f"jets gave {j.value}, expected {value}")
        return f"{value} via {div}; jets agree at level {j.certificate.level}"
    return check


SURFACES = [
    ("x^2+y*z*(y+z)", "A1", 1, (3, 2, 2)),
    ("x^2+y^2*z", "A2", 1, None),
    ("x^2+y^3+z^7", "A3-1", MINUS_INF, (21, 14, 6)),
    ("x^2+y*z*(y+z)*(y-z)", "B1", 0, (2, 1, 1)),
    ("x^2+y^2*z^2", "B3-2", 0, (2, 1, 1)),
    ("x^2+y^3*z", "B4", MINUS_INF, (15, 8, 6)),
    ("x^2+y^4+z^5", "B5", MINUS_INF, (10, 5, 4)),
]


def _surface_fixture(text, label, value, p):
    def check():
        f = parse_poly(text, "x,y,z")
        r, sc = classify_surface_double(f)
        _expect(sc.label == label, f"class {sc.label}, expected {label}")
        _expect(r.value == value and r.certified, f"value {r.value}, expected {value}")
        if p is not None:
            _expect(r.certificate.p == p, f"covector {r.certificate.p}, expected {p}")
        revalidate(f, r)
        return f"{label}, mld {value}, p = {r.certificate.p}"
    return check


CASES = [
    ("emb5", ["v^2", "w^2", "z^2"], "v,w,x,y,z", 1, -1),
    ("emb4-ord3", ["z^3", "w^3"], "w,x,y,z", 2, -2),
    ("emb3-ord4", ["x^4+y^4+z^4"], "x,y,z", 3, -1),
]


def _case_fixture(texts, vars_, level, s):
    def check():
        gens = [parse_poly(t, vars_) for t in texts]
        r = dispatch_surface(gens)
        _expect(r.value == MINUS_INF, f"dispatch gave {r.value}")
        _expect(r.profile[0].m == level and r.profile[0].s == s,
                f"dispatch arithmetic s_{r.profile[0].m} = {r.profile[0].s}")
        j = mld_via_jets(gens, None, 2, None, level)
        entry = j.profile[level]
        _expect(entry.s == s, f"jets give s_{level} = {entry.s}, expected {s}")
        return f"s_{level} = {s} by arithmetic and by Groebner"
    return check


NONDEGENERATE = [
    ("x^2+y^2*z^2", "all-faces"),
    ("x^2+y*z*(y+z)", "compact-faces"),
    ("x^2+y*z*(y+z)*(y-z)", "compact-faces"),
    ("x^2+y^3+z^7", "all-faces"),
    ("x^2+y^3*z", "all-faces"),
    ("x^2+y^4+z^5", "all-faces"),
    ("x^2+y^2*z", "all-faces"),
    ("x^3+y^3+z^3", "all-faces"),
]


def _nondeg_fixture(text, mode, expected=True):
    def check():
        v = is_nondegenerate(parse_poly(text, "x,y,z"), mode)
        _expect(v.nondegenerate == expected, f"verdict {v.nondegenerate} in {mode}")
        if not expected:
            _expect(v.face is not None, "a failing face must be reported")
            return f"degenerate on face {list(v.face.vertices)}"
        return f"non-degenerate ({mode}, {v.faces_checked} faces)"
    return check


def all_fixtures() -> list:
    out = []
    for name, gens, p, one, val in EXAMPLE_POLYGONS:
        out.append(Fixture(f"newton/{name}", "newton", _polygon_fixture(gens, p, one, val)))
    out.append(Fixture("newton/pinch", "newton", _newton_value("x^2+y^2*z", "x,y,z", 1)))
    out.append(Fixture("newton/one", "newton", _newton_value("x*y*z", "x,y,z", 0)))
    for text, value, div, kE, val in CURVES:
        out.append(Fixture(f"curves/{text}", "curves", _curve_fixture(text, value, div, kE, val)))
    for text, label, value, p in SURFACES:
        out.append(Fixture(f"surfaces/{label}", "surfaces", _surface_fixture(text, label, value, p)))
    for name, texts, vars_, level, s in CASES:
        out.append(Fixture(f"cases/{name}", "cases", _case_fixture(texts, vars_, level, s)))
    for text, mode in NONDEGENERATE:
        out.append(Fixture(f"nondegen/{text}", "nondegen", _nondeg_fixture(text, mode)))
    out.append(Fixture("nondegen/(y-z)^2+x^3", "nondegen",
                       _nondeg_fixture("(y-z)^2+x^3", "all-faces", expected=False)))
    return out


def run_fixtures(group: str | None = None) -> list:
    outcomes = []
    for fx in all_fixtures():
        if group and fx.group != group:
            continue
        t0 = time.perf_counter()
        try:
            detail, ok = fx.check(), True
        except AssertionError as e:
            detail, ok = str(e), False
        outcomes.append(Outcome(fx.name, fx.group, ok, detail, time.perf_counter() - t0))
    return outcomes
