"""Jet schemes: the equations f^(j), local jet ideals over a point, and s_m.

For ``f`` in N variables, substituting ``x_i -> sum_j x_i^(j) t^j`` and
expanding modulo ``t^(m+1)`` gives ``sum_j f^(j) t^j``; ``f^(j)`` is
homogeneous of weight ``j`` when ``x_i^(j)`` has weight ``j``.  The fibre
``X_m(x)`` over a point is cut out by the ``f^(j)`` after translating ``x`` to
the origin and setting every ``x_i^(0) = 0``.

``s_m(X, x) = (m+1) d - dim X_m(x)`` and ``mld_MJ(x; X) = inf_m s_m`` (with
``-inf`` as soon as some ``s_m`` is negative).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PointNotOnVariety, ResourceLimit
from .groebner import DEFAULT_BUDGET, buchberger, dimension
from .newton import rank
from .results import MINUS_INF, JetLevel, MldResult, SmEntry
from .ring import Poly, Ring, coerce, homogeneous_part, initial_form, multiplicity, translate

# certification thresholds: N_1 = 5 for curves, N_2 = 41 for surfaces (char != 2)
CURVE_BOUND = 5
SURFACE_BOUND = 41
DEFAULT_BOUND = {1: 5, 2: 8}


@dataclass(frozen=True)
class JetSystem:
    """Jet equations of an ideal at level ``m``.

    ``ring`` holds the variables ``x_i^(j)`` ordered by decreasing weight;
    ``equations[k][j]`` is ``f_k^(j)`` (local systems drop ``x^(0)``).
    """

    N: int
    m: int
    ring: Ring
    equations: tuple
    local: bool = False
    base_vars: tuple = ()

    def variable(self, i: int, j: int) -> Poly:
        return self.ring.var(self.ring.vars.index(jet_var_name(self.base_vars[i], j)))

    def generators(self) -> list:
        return [e for eqs in self.equations for e in eqs if e.terms]

    def weight(self, mon) -> int:
        return sum(e * _weight_of(v) for e, v in zip(mon, self.ring.vars))


def jet_var_name(base: str, j: int) -> str:
    return f"{base}_{j}"


def _weight_of(name: str) -> int:
    return int(name.rsplit("_", 1)[1])


def jet_ring(base_vars: Sequence[str], m: int, char: int, local: bool) -> Ring:
    lowest = 1 if local else 0
    names = [jet_var_name(v, j) for j in range(m, lowest - 1, -1) for v in base_vars]
    return Ring(names, char)


def _series_mul(A: list, B: list, m: int, zero: Poly) -> list:
    out = [zero] * (m + 1)
    for a, pa in enumerate(A):
        if not pa:
            continue
        for b in range(0, m + 1 - a):
            pb = B[b]
            if pb:
                out[a + b] = out[a + b] + pa * pb
    return out


def _jet_expand(f: Poly, m: int, R: Ring, local: bool) -> list:
    """Coefficients of ``t^0..t^m`` after substituting the generic jet into ``f``."""
    zero = R.zero()
    base = f.vars
    series = []
    for v in base:
        s = [zero] * (m + 1)
        for j in range(1 if local else 0, m + 1):
            s[j] = R.var(R.vars.index(jet_var_name(v, j)))
        series.append(s)
    powers = [[None] for _ in base]
    one = [R.const(1)] + [zero] * m

    def power(i, e):
        cache = powers[i]
        cache[0] = one
        while len(cache) <= e:
            cache.append(_series_mul(cache[-1], series[i], m, zero))
        return cache[e]

    total = [zero] * (m + 1)
    for mon, c in f.terms.items():
        # locally a monomial of degree > m contributes nothing below t^(m+1)
        if local and sum(mon) > m:
            continue
        term = [R.const(c)] + [zero] * m
        for i, e in enumerate(mon):
            if e:
                term = _series_mul(term, power(i, e), m, zero)
        total = [a + b for a, b in zip(total, term)]
    return total


def jet_equations(gens: Sequence[Poly], N: int | None = None, m: int = 1,
                  local: bool = False) -> JetSystem:
    """All ``f^(j)``, ``0 <= j <= m``, for every generator."""
    gens = list(gens)
    base = gens[0].vars
    if N is not None and N != len(base):
        raise ValueError(f"generators live in {len(base)} variables, not {N}")
    R = jet_ring(base, m, gens[0].char, local)
    eqs = tuple(tuple(_jet_expand(f, m, R, local)) for f in gens)
    return JetSystem(len(base), m, R, eqs, local, base)


def localize_at_origin(J: JetSystem) -> JetSystem:
    """Set every ``x_i^(0)`` to zero (the fibre over the origin)."""
    if J.local:
        raise ValueError("jet system is already local")
    R = jet_ring(J.base_vars, J.m, J.ring.char, True)
    keep = [k for k, v in enumerate(J.ring.vars) if _weight_of(v) > 0]
    zero_idx = [k for k, v in enumerate(J.ring.vars) if _weight_of(v) == 0]
    out = []
    for eqs in J.equations:
        row = []
        for e in eqs:
            terms = {tuple(mon[k] for k in keep): c for mon, c in e.terms.items()
                     if all(mon[k] == 0 for k in zero_idx)}
            row.append(Poly._make(terms, R.vars, R.char))
        out.append(tuple(row))
    return JetSystem(J.N, J.m, R, tuple(out), True, J.base_vars)


# ---------------------------------------------------------------------------
# points


def parse_point(point, n: int, char: int = 0) -> tuple:
    if point is None:
        return (0,) * n
    pt = tuple(Fraction(a) if isinstance(a, str) else a for a in point)
    if len(pt) != n:
        raise ValueError(f"point has {len(pt)} coordinates, expected {n}")
    return tuple(coerce(a, char) for a in pt)


def at_origin(gens: Sequence[Poly], x=None) -> list:
    """Translate ``x`` to the origin after checking it lies on V(gens)."""
    gens = list(gens)
    n = gens[0].nvars
    pt = parse_point(x, n, gens[0].char)
    for g in gens:
        if g.evaluate(pt) != 0:
            raise PointNotOnVariety(f"{g} does not vanish at {tuple(str(a) for a in pt)}")
    if not any(pt):
        return gens
    return [translate(g, pt) for g in gens]


def embedding_dimension(gens: Sequence[Poly], N: int | None = None, x=None) -> int:
    """``dim X_1(x) = N - rank`` of the Jacobian matrix at ``x``."""
    local = at_origin(gens, x)
    n = local[0].nvars
    rows = []
    for g in local:
        lin = homogeneous_part(g, 1)
        rows.append([lin.coeff(tuple(int(i == k) for i in range(n))) for k in range(n)])
    if local[0].char:
        return n - _rank_mod_p(rows, local[0].char)
    return n - rank(rows)


def _rank_mod_p(rows, p) -> int:
    rows = [[c % p for c in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def order_of_ideal(gens: Sequence[Poly], x=None) -> int:
    """Minimal multiplicity at ``x`` over the given generators.

    Depends on the generating set in general; callers pass honest generators.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        raise ValueError("order of the zero ideal")
    local = at_origin(gens, x)
    return min(multiplicity(g) for g in local)


# ---------------------------------------------------------------------------
# dimensions and s_m


def jet_dimension(gens: Sequence[Poly], m: int, local: bool = True,
                  budget: int = DEFAULT_BUDGET) -> int:
    """``dim X_m(0)`` (local) or ``dim X_m`` (global) for ``X = V(gens)``."""
    gens = [g for g in gens if g.terms]
    n = gens[0].nvars if gens else 0
    nv = n * m if local else n * (m + 1)
    if m == 0 and local:
        return 0
    J = jet_equations(gens, n, m, local=local)
    eqs = J.generators()
    if not eqs:
        return nv
    I = buchberger(eqs, budget=budget, ring=J.ring)
    return dimension(I, nv)


def s_m(gens: Sequence[Poly], N: int | None, d: int, x=None, m: int = 1,
        budget: int = DEFAULT_BUDGET) -> SmEntry:
    """``s_m(X, x) = (m+1) d - dim X_m(x)``."""
    gens = [g for g in gens if g.terms]
    local = at_origin(gens, x)
    if N is not None and local and N != local[0].nvars:
        raise ValueError(f"generators live in {local[0].nvars} variables, not {N}")
    dim = jet_dimension(local, m, local=True, budget=budget)
    return SmEntry(m, (m + 1) * d - dim)


def s_profile(gens, N, d, x=None, levels=range(0, 6), budget: int = DEFAULT_BUDGET,
              stop_negative: bool = True) -> list:
    """``s_m`` for each level; stops at a budget failure (recorded in the last entry)."""
    out = []
    local = at_origin(gens, x)
    for m in levels:
        try:
            e = s_m(local, N, d, None, m, budget)
        except ResourceLimit:
            out.append(SmEntry(m, None, "budget-exceeded"))
            break
        out.append(e)
        if stop_negative and e.s < 0:
            break
    return out


def jets_certified(d: int, char: int, bound: int) -> bool:
    return (d == 1 and bound >= CURVE_BOUND) or (d == 2 and char != 2 and bound >= SURFACE_BOUND)


def mld_via_jets(gens: Sequence[Poly], N: int | None, d: int, x=None, bound: int | None = None,
                 budget: int = DEFAULT_BUDGET) -> MldResult:
    """Jet-scheme verdict on ``mld_MJ(x; X)`` from the levels ``0..bound``.

    A negative ``s_m`` proves ``-inf``.  Otherwise the minimum is an upper
    bound, certified exact only at or beyond the known bounds for curves
    (5) and surfaces in characteristic != 2 (41).
    """
    if bound is None:
        bound = DEFAULT_BOUND.get(d, 5)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    gens = [g for g in gens if g.terms]
    char = gens[0].char
    profile = tuple(s_profile(gens, N, d, x, range(0, bound + 1), budget))
    done = [e for e in profile if e.status == "computed"]
    neg = [e for e in done if e.s < 0]
    if neg:
        e = neg[0]
        return MldResult(MINUS_INF, True, JetLevel(e.m, e.s), nu_upper=e.m + 1,
                         profile=profile)
    best = min(done, key=lambda e: (e.s, e.m))
    certified = jets_certified(d, char, bound) and len(done) == len(profile)
    result = MldResult(best.s, certified, JetLevel(best.m, best.s), nu_upper=best.m + 1,
                       profile=profile,
                       note="" if certified else "upper bound on mld_MJ; nu is an upper bound")
    if len(done) < len(profile):
        raise ResourceLimit(f"jet level {profile[-1].m} exceeded the Groebner budget",
                            partial=result)
    return result


def initial_ideal_jets(gens: Sequence[Poly], N: int | None, d: int, m: int, x=None,
                       budget: int = DEFAULT_BUDGET) -> SmEntry:
    """``s_m(Y, 0)`` for ``Y`` cut out by the initial forms of minimal-order generators."""
    return s_m(initial_ideal(gens, x), N, d, None, m, budget)


def initial_ideal(gens: Sequence[Poly], x=None) -> list:
    local = [g for g in at_origin(gens, x) if g.terms]
    alpha = min(multiplicity(g) for g in local)
    return [initial_form(g) for g in local if multiplicity(g) == alpha]
