"""Closed-form mld_MJ for plane curves and for surface points.

Curves are decided by the multiplicity and the tangent cone.  Surfaces are
first reduced to their minimal embedding; large embedding dimension or order
gives ``-inf`` by jet arithmetic, maximal-type points fall back on jets, and
double points in three-space are classified after splitting off ``x^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (CharacteristicUnsupported, NonSplitInitialForm, NormalizationFailed,
                     PrecisionInsufficient, ZeroPolynomial)
from .groebner import divide, poly_gcd
from .jets import at_origin, embedding_dimension, mld_via_jets
from .newton import polygon_from_support, toric_certificate
from .results import MINUS_INF, BlowupChain, ClassLabel, JetLevel, MldResult, SmEntry
from .ring import (Poly, Ring, derivative, homogeneous_part, initial_form, inverse,
                   multiplicity, squarefree_decomposition, squarefree_pattern, substitute)

__all__ = ["MldResult", "SurfaceClass", "classify_curve", "tschirnhausen_normalize",
           "classify_surface_double", "dispatch_surface", "is_maximal_type",
           "minimal_embedding", "DEFAULT_TRUNC", "LABELS"]

DEFAULT_TRUNC = 12
LABELS = ("A1", "A2", "A3-1", "A3-2", "A3-3", "B1", "B2-1", "B2-2", "B3-1", "B3-2",
          "B4", "B5", "mult-h-2", "mult-h-ge-5")


@dataclass(frozen=True)
class SurfaceClass:
    """Class of a double point ``x^2 + h(y, z)``; ``h`` is the normalized, truncated h."""

    label: str
    h: Poly
    m0: int | float
    pattern: tuple
    exact: bool
    reduced: Optional[bool] = None
    trunc: int = DEFAULT_TRUNC

    def to_json(self) -> dict:
        return {"label": self.label, "h": str(self.h), "mult_h": self.m0,
                "pattern": list(self.pattern), "exact": self.exact,
                "reduced": self.reduced, "trunc": self.trunc}


# ---------------------------------------------------------------------------
# curves


def _line_to_first(f: Poly, line: Poly) -> Poly:
    """Linear change of the two variables of ``f`` making ``line`` the first coordinate."""
    R = f.ring
    u, v = R.gens
    a = line.coeff((1, 0))
    b = line.coeff((0, 1))
    if a:
        # line = a*x + b*y = u  =>  x = (u - b*v)/a, y = v
        ia = inverse(a, R.char)
        return substitute(f, [(u - v.scale(b)).scale(ia), v])
    ib = inverse(b, R.char)
    return substitute(f, [v, u.scale(ib)])


def classify_curve(f: Poly, point=None) -> MldResult:
    """mld_MJ of the plane curve ``f = 0`` at ``point`` (the origin by default)."""
    if f.nvars != 2:
        raise ValueError("classify_curve expects a polynomial in two variables")
    if not f.terms:
        raise ZeroPolynomial("the zero polynomial does not define a curve")
    (f,) = at_origin([f], point)
    mult = multiplicity(f)
    if mult == 1:
        return MldResult(1, True, BlowupChain("E1: blow-up of a smooth point", 1, 1),
                         nu_upper=1, label="smooth")
    if mult >= 3:
        cert = BlowupChain("E1: blow-up of the point; order >= 3 makes a(E1) negative",
                           1, mult)
        return MldResult(MINUS_INF, True, cert, nu_upper=3, label="mult-ge-3")
    tangent = initial_form(f)
    pattern = squarefree_pattern(tangent)
    if pattern == [1, 1]:
        return MldResult(0, True, BlowupChain("E1: blow-up of a node", 1, 2),
                         nu_upper=2, label="node")
    # double tangent: E3 of the three-step chain, seen torically as p = (3, 2)
    (line, _k), = squarefree_decomposition(tangent)
    g = _line_to_first(f, line)
    cert_t = toric_certificate(polygon_from_support(g), (3, 2))
    assert cert_t.log_discrepancy < 0, "the covector (3, 2) must give a negative discrepancy"
    cert = BlowupChain("E3: third blow-up along the double tangent", 4, cert_t.val,
                       val_lower_bound=True, p=(3, 2))
    return MldResult(MINUS_INF, True, cert, nu_upper=cert_t.val, label="double-tangent")


# ---------------------------------------------------------------------------
# splitting off x^2


def _swap_first(f: Poly, k: int) -> Poly:
    gens = list(f.ring.gens)
    gens[0], gens[k] = gens[k], gens[0]
    return substitute(f, gens)


def _square_in_first(f: Poly) -> Poly:
    """Linear change so that the quadratic part contains ``x_0^2``, then make it monic."""
    q = homogeneous_part(f, 2)
    n = f.nvars
    unit = lambda i: tuple(int(j == i) for j in range(n))  # noqa: E731
    squares = [i for i in range(n) if q.coeff(tuple(2 * e for e in unit(i)))]
    if not squares:
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n)
                     if q.coeff(tuple(a + b for a, b in zip(unit(i), unit(j))))), None)
        if pair is None:
            raise NormalizationFailed("multiplicity is not 2")
        i, j = pair
        gens = list(f.ring.gens)
        gens[i] = gens[i] + gens[j]
        f = substitute(f, gens)
        squares = [j]
    k = squares[0]
    if k:
        f = _swap_first(f, k)
    c = f.coeff(tuple(2 * e for e in unit(0)))
    return f.scale(inverse(c, f.char))


def tschirnhausen_normalize(f: Poly, trunc: int = DEFAULT_TRUNC) -> tuple:
    """Write ``f = unit * (x'^2 + h(y, z))`` modulo degree > ``trunc``.

    Returns ``(h, exact)``; ``exact`` means ``f`` is literally ``x'^2 + h`` after a
    polynomial change of coordinates, so ``h`` is not a truncation.  The first
    variable plays the role of ``x`` after a linear change if needed.
    """
    if f.char == 2:
        raise CharacteristicUnsupported("completing the square needs characteristic != 2")
    if f.nvars != 3:
        raise ValueError("expected a polynomial in three variables")
    if multiplicity(f) != 2:
        raise NormalizationFailed("expected a double point")
    f = _square_in_first(f)
    R = f.ring
    x, y, z = R.gens
    half = inverse(2, R.char)
    fx = derivative(f, 0)
    # phi(y, z) with f_x(phi, y, z) = 0: each pass fixes at least one more degree
    phi = R.zero()
    for _ in range(trunc + 2):
        err = substitute(fx, [phi, y, z], trunc=trunc)
        if not err:
            break
        phi = phi - err.scale(half)
    else:
        raise NormalizationFailed("splitting iteration did not stabilize")
    h3 = substitute(f, [phi, y, z], trunc=trunc)
    h = Poly._make({m[1:]: c for m, c in h3.terms.items()}, R.vars[1:], R.char)
    exact = False
    if phi.total_degree() <= 2 and not substitute(fx, [phi, y, z]).terms:
        shifted = substitute(f, [x + phi, y, z])
        lifted = Poly._make({(0,) + m: c for m, c in h.terms.items()}, R.vars, R.char)
        exact = shifted - lifted == x * x
    return h, exact


# ---------------------------------------------------------------------------
# double points x^2 + h


def _linear_change(h: Poly, first: Poly, second: Optional[Poly] = None) -> Poly:
    """Rewrite ``h(y, z)`` in coordinates where ``first`` (and ``second``) are y (and z)."""
    if first.total_degree() != 1 or (second is not None and second.total_degree() != 1):
        raise NonSplitInitialForm(
            "the required line is not defined over the ground field; "
            "apply a linear change over an extension by hand")
    R = h.ring
    y, z = R.gens
    char = R.char
    a, b = first.coeff((1, 0)), first.coeff((0, 1))
    if second is None:
        c, d = (0, 1) if a else (1, 0)
    else:
        c, d = second.coeff((1, 0)), second.coeff((0, 1))
    det = a * d - b * c
    if char:
        det %= char
    if not det:
        raise NormalizationFailed("lines are not independent")
    idet = inverse(det, char)
    # (y', z') = M (y, z)  =>  (y, z) = M^-1 (y', z')
    new_y = (y.scale(d) - z.scale(b)).scale(idet)
    new_z = (z.scale(a) - y.scale(c)).scale(idet)
    return substitute(h, [new_y, new_z])


def _is_reduced(h: Poly) -> bool:
    """``h`` has no repeated factor through the origin (on the polynomial given)."""
    g = poly_gcd(h, derivative(h, 0))
    g = poly_gcd(g, derivative(h, 1))
    return not (g.total_degree() > 0 and g.constant_term() == 0)


def _radical_multiplicity(h: Poly) -> int | float:
    g = poly_gcd(poly_gcd(h, derivative(h, 0)), derivative(h, 1))
    q, r = divide(h, g)
    if r.terms:
        raise ArithmeticError("gcd does not divide h")
    return multiplicity(q)


def _weighted_part(h: Poly, weights, w: int) -> Poly:
    return Poly._make({m: c for m, c in h.terms.items()
                       if sum(a * b for a, b in zip(m, weights)) == w}, h.vars, h.char)


def _min_weight(h: Poly, weights) -> int | float:
    return min((sum(a * b for a, b in zip(m, weights)) for m in h.terms), default=float("inf"))


def _cubic_in_y_Z(h6: Poly) -> Poly:
    """A (2,1)-homogeneous weight-6 h(y, z) as a binary cubic in (y, Z = z^2)."""
    return Poly._make({(a, b // 2): c for (a, b), c in h6.terms.items()}, h6.vars, h6.char)


def _lift_h(h: Poly) -> Poly:
    vars3 = ("x",) + tuple(h.vars) if "x" not in h.vars else ("_x",) + tuple(h.vars)
    terms = {(0,) + m: c for m, c in h.terms.items()}
    terms[(2, 0, 0)] = terms.get((2, 0, 0), 0) + 1
    return Poly(terms, vars3, h.char)


def _a3_decision(h: Poly, trunc: int) -> tuple:
    """Triple-line cubic part: returns (label-kind, covector, normalized h)."""
    (line, _k), = [t for t in squarefree_decomposition(initial_form(h)) if t[1] == 3]
    h = _linear_change(h, line)
    w = (2, 1)
    if _min_weight(h, w) < 6:
        return "value1", (3, 2, 2), h
    cubic = _cubic_in_y_Z(_weighted_part(h, w, 6))
    pattern = squarefree_pattern(cubic)
    if pattern != [3]:
        return "value0", (3, 2, 1), h
    (l3, _), = squarefree_decomposition(cubic)
    # l3 = a*y + b*Z ; a != 0 since y^3 occurs, so y -> y - (b/a) z^2 makes it a*y
    a, b = l3.coeff((1, 0)), l3.coeff((0, 1))
    lam = b * inverse(a, h.char)
    y, z = h.ring.gens
    h = substitute(h, [y - (z * z).scale(lam), z], trunc=trunc)
    if _min_weight(h, w) < 6 or set(_weighted_part(h, w, 6).terms) != {(3, 0)}:
        raise NormalizationFailed("weighted initial form did not become y^3")
    return "minf", (21, 14, 6), h


def _classify_h(h: Poly, exact: bool, trunc: int):
    m0 = multiplicity(h)
    if m0 == 2:
        return "mult-h-2", 1, (1, 1, 1), h, None, ()
    if m0 >= 5:
        return "mult-h-ge-5", MINUS_INF, (5, 2, 2), h, None, ()
    pattern = tuple(squarefree_pattern(initial_form(h)))
    if m0 == 3:
        if pattern in ((1, 1, 1), (2, 1)):
            label = "A1" if pattern == (1, 1, 1) else "A2"
            return label, 1, (3, 2, 2), h, None, pattern
        kind, p, h2 = _a3_decision(h, trunc)
        if kind == "value1":
            return "A3-2", 1, p, h2, None, pattern
        if kind == "minf":
            return "A3-1", MINUS_INF, p, h2, None, pattern
        reduced = _is_reduced(h2)
        return ("A3-2" if reduced else "A3-3"), 0, p, h2, reduced, pattern
    # m0 == 4
    if pattern == (1, 1, 1, 1):
        return "B1", 0, (2, 1, 1), h, None, pattern
    if pattern == (2, 1, 1):
        reduced = _is_reduced(h)
        return ("B2-1" if reduced else "B2-2"), 0, (2, 1, 1), h, reduced, pattern
    if pattern == (2, 2):
        reduced = _is_reduced(h)
        return ("B3-1" if reduced else "B3-2"), 0, (2, 1, 1), h, reduced, pattern
    dec = squarefree_decomposition(initial_form(h))
    if pattern == (3, 1):
        l1 = next(g for g, k in dec if k == 3)
        l2 = next(g for g, k in dec if k == 1)
        return "B4", MINUS_INF, (15, 8, 6), _linear_change(h, l1, l2), None, pattern
    (l, _), = dec
    return "B5", MINUS_INF, (10, 5, 4), _linear_change(h, l), None, pattern


# labels whose value rests on an explicit resolution rather than on the covector alone
_RESOLUTION_LABELS = {"A3-3", "B2-2"}


def classify_surface_double(f: Poly, trunc: int = DEFAULT_TRUNC, point=None) -> tuple:
    """Classify a double point of a surface in three-space.

    Returns ``(MldResult, SurfaceClass)``.  Toric covectors are re-validated on
    the Newton polygon of the normalized equation ``x^2 + h``.
    """
    if f.char == 2:
        raise CharacteristicUnsupported("double points in characteristic 2 are not handled")
    if trunc < 6:
        raise ValueError("truncation degree must be at least 6")
    (f,) = at_origin([f], point)
    if multiplicity(f) != 2:
        raise NormalizationFailed("expected a double point")
    if embedding_dimension([f]) != 3:
        raise NormalizationFailed("expected embedding dimension 3")
    h, exact = tschirnhausen_normalize(f, trunc)
    label, value, p, hn, reduced, pattern = _classify_h(h, exact, trunc)
    if label.startswith("A3"):
        h2, _ = tschirnhausen_normalize(f, trunc + 2)
        again = _classify_h(h2, exact, trunc + 2)
        if (again[0], again[1]) != (label, value):
            raise PrecisionInsufficient(
                f"decision changed from {label} to {again[0]} when raising the truncation")
    if label == "B3-2" and _radical_multiplicity(hn) != 2:
        # the non-toric sub-case: the value comes from an explicit resolution
        resolution = True
    else:
        resolution = label in _RESOLUTION_LABELS
    fn = _lift_h(hn)
    P = polygon_from_support(fn)
    cert = toric_certificate(P, p)
    if min(p[1:]) * (trunc + 1) < cert.val:
        raise PrecisionInsufficient("truncated terms could lower the valuation")
    ok = cert.log_discrepancy < 0 if value == MINUS_INF else cert.log_discrepancy == value
    if not ok:
        raise ArithmeticError(f"covector {p} does not validate for class {label}")
    if resolution:
        cert = ClassLabel(label, locus=f"double point, class {label}", p=cert.p, kE=cert.kE,
                          val=cert.val, provenance="explicit-resolution")
    note = "" if exact else f"h is a power series truncated at degree {trunc}"
    sc = SurfaceClass(label, hn, multiplicity(h), pattern, exact, reduced, trunc)
    return MldResult(value, True, cert, nu_upper=cert.val, label=label, note=note), sc


# ---------------------------------------------------------------------------
# surface dispatch


def _drop_var(f: Poly, k: int, vars_: tuple) -> Poly:
    return Poly._make({m[:k] + m[k + 1:]: c for m, c in f.terms.items()}, vars_, f.char)


def minimal_embedding(gens: Sequence[Poly], trunc: int = DEFAULT_TRUNC) -> list:
    """Eliminate variables occurring linearly, solving for them as truncated power series.

    Input generators must vanish at the origin.  The result lives in
    ``emb`` variables and has no linear terms; it is exact only when every
    solved variable was a polynomial in the others.
    """
    gens = [g for g in gens if g.terms]
    while True:
        pick = None
        for gi, g in enumerate(gens):
            lin = homogeneous_part(g, 1)
            if lin.terms:
                k = max(m.index(1) for m in lin.terms)
                pick = (gi, k, lin.coeff(tuple(int(j == k) for j in range(g.nvars))))
                break
        if pick is None:
            return gens
        gi, k, c = pick
        g = gens[gi]
        R = g.ring
        ic = inverse(c, R.char)
        xs = list(R.gens)
        phi = R.zero()
        for _ in range(trunc + 2):
            xs[k] = phi
            nxt = phi - substitute(g, xs, trunc=trunc).scale(ic)
            if nxt == phi:
                break
            phi = nxt
        else:
            raise NormalizationFailed("could not solve for a linear variable")
        xs[k] = phi
        vars_ = R.vars[:k] + R.vars[k + 1:]
        rest = []
        for j, h in enumerate(gens):
            if j == gi:
                continue
            # keep h exact when phi is a polynomial and no truncation is needed
            s = substitute(h, xs, trunc=trunc)
            s = _drop_var(s, k, vars_)
            if s.terms:
                rest.append(s)
        if not rest:
            return [Ring(vars_, R.char).zero()] if vars_ else []
        gens = rest


def is_maximal_type(gens: Sequence[Poly], N: int | None = None, x=None, d: int = 2) -> tuple:
    """``(emb == c * ord, c, ord)`` with ``c = emb - d`` computed in the minimal embedding."""
    local = at_origin(gens, x)
    emb = embedding_dimension(local)
    c = emb - d
    if c <= 0:
        return False, c, None
    reduced = [g for g in minimal_embedding(local) if g.terms]
    if not reduced:
        return False, c, None
    alpha = min(multiplicity(g) for g in reduced)
    return emb == c * alpha, c, alpha


def dispatch_surface(gens: Sequence[Poly], N: int | None = None, x=None, char: int | None = None,
                     trunc: int = DEFAULT_TRUNC, bound: int | None = None,
                     budget: int | None = None) -> MldResult:
    """mld_MJ of a surface point, dispatched on embedding dimension and order."""
    gens = [g for g in gens if g.terms]
    if not gens:
        raise ZeroPolynomial("no nonzero generators")
    if char is not None and char != gens[0].char:
        raise ValueError("characteristic mismatch")
    local = at_origin(gens, x)
    emb = embedding_dimension(local)
    if emb < 2:
        raise ValueError("the point is not on a surface (embedding dimension < 2)")
    if emb == 2:
        return MldResult(2, True, ClassLabel("smooth", locus="smooth surface point"),
                         nu_upper=1, label="smooth")
    if emb >= 5:
        s1 = 4 - emb
        c = emb - 2
        cert = BlowupChain(f"E1: blow-up of the point in {emb}-space, a(E1) = {s1}",
                           emb - 1, 2 * c, val_lower_bound=True)
        return MldResult(MINUS_INF, True, cert, nu_upper=2, label="case-1",
                         profile=(SmEntry(1, s1),))
    reduced = [g for g in minimal_embedding(local, trunc) if g.terms]
    alpha = min(multiplicity(g) for g in reduced)
    kwargs = {} if budget is None else {"budget": budget}
    if emb == 4 and alpha >= 3:
        return MldResult(MINUS_INF, True, JetLevel(2, -2), nu_upper=3, label="case-2",
                         profile=(SmEntry(2, -2),))
    if emb == 3 and alpha >= 4:
        return MldResult(MINUS_INF, True, JetLevel(3, -1), nu_upper=4, label="case-4",
                         profile=(SmEntry(3, -1),))
    if (emb, alpha) in ((4, 2), (3, 3)):
        r = mld_via_jets(local, None, 2, None, bound, **kwargs)
        label = "case-3" if emb == 4 else "case-5"
        return MldResult(r.value, r.certified, r.certificate, r.nu_upper, label, r.profile,
                         r.note)
    # emb == 3, alpha == 2
    if gens[0].char == 2:
        raise CharacteristicUnsupported("double points in characteristic 2 are not handled")
    if len(reduced) != 1:
        raise NormalizationFailed("expected a single equation in the minimal embedding")
    result, _sc = classify_surface_double(reduced[0], trunc)
    return result
