"""Newton polygons Gamma_+(f) in Z^n, their face lattices, and the toric mld.

For a covector ``p`` with positive coordinates the toric divisor ``E_p`` has
log discrepancy ``<p,1> - <p,Gamma>``.  :func:`mld_polygon` minimises it
exactly: ``-inf`` with a separating witness when ``1`` lies outside Gamma, and
otherwise a finite search over sums of Hilbert basis elements of the normal
fan cones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionTooLarge, ZeroPolynomial
from .results import MINUS_INF, MldResult, ToricCovector
from .ring import Poly

MAX_DIM = 4


def dot(p, m) -> int:
    return sum(a * b for a, b in zip(p, m))


def primitive(v) -> tuple:
    g = reduce(gcd, (abs(x) for x in v), 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def rank(vectors: Sequence) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# cones inside the nonnegative orthant


def orthant_cone_rays(constraints: Sequence, n: int) -> list:
    """Extreme rays of ``{p >= 0 : <a, p> >= 0 for a in constraints}``.

    Double description with the combinatorial adjacency test; rays are
    primitive integer vectors, sorted.
    """
    rays = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        rays.append((e, frozenset(j for j in range(n) if j != i)))
    for k, a in enumerate(constraints, start=n):
        vals = [dot(a, r) for r, _ in rays]
        pos = [(r, z, v) for (r, z), v in zip(rays, vals) if v > 0]
        neg = [(r, z, v) for (r, z), v in zip(rays, vals) if v < 0]
        new = [(r, z) for (r, z), v in zip(rays, vals) if v > 0]
        new += [(r, z | {k}) for (r, z), v in zip(rays, vals) if v == 0]
        for rp, zp, vp in pos:
            for rn, zn, vn in neg:
                common = zp & zn
                if len(common) < n - 2:
                    continue
                if any(common <= z3 for r3, z3 in rays if r3 != rp and r3 != rn):
                    continue
                r = primitive(tuple(vp * x - vn * y for x, y in zip(rn, rp)))
                new.append((r, common | {k}))
        rays = new
        if not rays:
            break
    return sorted({r for r, _ in rays})


def _fractional_group(rays: Sequence) -> list:
    """Lattice points of the half-open parallelepiped spanned by ``rays`` (a basis)."""
    n = len(rays)
    # columns of M are the rays; solve M lam = e_i
    M = [[Fraction(rays[j][i]) for j in range(n)] for i in range(n)]
    inv = _invert(M)
    gens = []
    for i in range(n):
        lam = tuple(inv[r][i] % 1 for r in range(n))
        gens.append(lam)
    seen = {tuple(Fraction(0) for _ in range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % 1 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    points = []
    for lam in seen:
        if any(lam):
            pt = tuple(sum(lam[j] * rays[j][i] for j in range(n)) for i in range(n))
            points.append(tuple(int(x) for x in pt))
    return points


def _invert(M):
    n = len(M)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def hilbert_basis(constraints: Sequence, n: int, rays: Sequence | None = None) -> list:
    """Hilbert basis of the pointed cone ``{p >= 0 : <a,p> >= 0}``.

    Candidates are the extreme rays plus the lattice points of every
    fundamental parallelepiped spanned by n independent rays; the irreducible
    ones are kept.
    """
    if rays is None:
        rays = orthant_cone_rays(constraints, n)
    cands = set(rays)
    for sub in combinations(rays, n):
        if rank(sub) == n:
            cands.update(_fractional_group(sub))
    cands = sorted(cands, key=lambda v: (sum(v), v))

    def in_cone(v):
        return all(x >= 0 for x in v) and all(dot(a, v) >= 0 for a in constraints)

    basis = []
    for x in cands:
        reducible = False
        for y in cands:
            if y == x or sum(y) > sum(x):
                continue
            d = tuple(a - b for a, b in zip(x, y))
            if any(d) and in_cone(d):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return sorted(basis)


# ---------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class Face:
    covector: tuple           # supporting covector, nonnegative
    vertices: tuple           # vertices of Gamma lying on the face
    recession: tuple          # coordinate directions e_i contained in the face
    compact: bool
    dim: int

    def contains(self, m) -> bool:
        """Whether the lattice point ``m`` of Gamma lies on this face."""
        if not self.vertices:
            return False
        return dot(self.covector, m) == dot(self.covector, self.vertices[0])


@dataclass(frozen=True, eq=False)
class NewtonPolygon:
    generators: tuple
    vertices: tuple
    dim_ambient: int
    facet_normals: tuple       # ((normal, offset), ...): Gamma = {x : <a,x> >= b}
    cones: tuple               # per vertex: (constraints, rays) of its normal cone

    def __eq__(self, other):
        return isinstance(other, NewtonPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def contains_point(self, x) -> bool:
        return all(dot(a, x) >= b for a, b in self.facet_normals)

    def to_json(self) -> list:
        return [list(v) for v in self.vertices]

    @cached_property
    def face_list(self) -> tuple:
        return tuple(_enumerate_faces(self))


def _check_dim(n: int):
    if n > MAX_DIM:
        raise DimensionTooLarge(f"ambient dimension {n} exceeds {MAX_DIM}")


def polygon_from_points(points: Iterable, n: int | None = None) -> NewtonPolygon:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ZeroPolynomial("Newton polygon of an empty set")
    n = len(pts[0]) if n is None else n
    if any(len(p) != n or min(p) < 0 for p in pts):
        raise ValueError("generators must be nonnegative vectors of equal length")
    _check_dim(n)
    cand = [p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]
    vertices, cones = [], []
    for v in cand:
        cons = [tuple(a - b for a, b in zip(w, v)) for w in cand if w != v]
        rays = orthant_cone_rays(cons, n)
        if rank(rays) == n:
            vertices.append(v)
            cones.append((v, tuple(cons), tuple(rays)))
    # drop constraints coming from non-vertices (they are implied)
    vset = set(vertices)
    cones = tuple(
        (v, tuple(c for c in cons if tuple(a + b for a, b in zip(c, v)) in vset), rays)
        for v, cons, rays in cones)
    normals = sorted({r for _, _, rays in cones for r in rays})
    facets = tuple((a, min(dot(a, v) for v in vertices)) for a in normals)
    return NewtonPolygon(tuple(pts), tuple(vertices), n, facets, cones)


def polygon_from_support(f: Poly) -> NewtonPolygon:
    if not f.terms:
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    return polygon_from_points(f.terms, f.nvars)


def pairing_min(P: NewtonPolygon, p: Sequence) -> int:
    """``<p, Gamma> = min over Gamma``; the vertex minimum suffices for ``p >= 0``."""
    return min(dot(p, v) for v in P.vertices)


def contains_one(P: NewtonPolygon) -> bool:
    return P.contains_point((1,) * P.dim_ambient)


def toric_log_discrepancy(P: NewtonPolygon, p: Sequence) -> int:
    return sum(p) - pairing_min(P, p)


def toric_certificate(P: NewtonPolygon, p: Sequence) -> ToricCovector:
    p = tuple(int(x) for x in p)
    if min(p) < 1:
        raise ValueError("toric covectors need positive coordinates")
    return ToricCovector(p, sum(p) - 1, pairing_min(P, p))


def _enumerate_faces(P: NewtonPolygon) -> list:
    n = P.dim_ambient
    V = P.vertices
    incid = []
    for a, b in P.facet_normals:
        vs = frozenset(i for i, v in enumerate(V) if dot(a, v) == b)
        zs = frozenset(i for i in range(n) if a[i] == 0)
        incid.append((vs, zs))
    faces = set(incid)
    frontier = set(incid)
    while frontier:
        nxt = set()
        for f1 in frontier:
            for f2 in incid:
                g = (f1[0] & f2[0], f1[1] & f2[1])
                if g[0] and g not in faces:
                    nxt.add(g)
        faces |= nxt
        frontier = nxt
    out = []
    for vs, zs in faces:
        cov = [0] * n
        for (a, _), (fv, fz) in zip(P.facet_normals, incid):
            if vs <= fv and zs <= fz:
                cov = [x + y for x, y in zip(cov, a)]
        verts = tuple(V[i] for i in sorted(vs))
        v0 = verts[0]
        span = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
        span += [tuple(int(j == i) for j in range(n)) for i in zs]
        out.append(Face(primitive(cov), verts, tuple(sorted(zs)), not zs, rank(span)))
    # the polygon itself
    out.append(Face((0,) * n, tuple(V), tuple(range(n)), False, n))
    out.sort(key=lambda F: (F.dim, F.vertices, F.recession))
    return out


def faces(P: NewtonPolygon, compact_only: bool = False) -> list:
    _check_dim(P.dim_ambient)
    fl = list(P.face_list)
    return [F for F in fl if F.compact] if compact_only else fl


def face_restriction(f: Poly, F: Face) -> Poly:
    """``f_gamma``: the terms of ``f`` whose exponents lie on the face."""
    return Poly._make({m: c for m, c in f.terms.items() if F.contains(m)}, f.vars, f.char)


# ---------------------------------------------------------------------------
# the toric mld


def g_value(P: NewtonPolygon, p: Sequence) -> int:
    """``max_v <p, 1 - v>``, i.e. the toric log discrepancy of E_p."""
    return toric_log_discrepancy(P, p)


def minus_inf_witness(P: NewtonPolygon) -> tuple:
    """A positive covector with negative toric log discrepancy (1 outside Gamma)."""
    n = P.dim_ambient
    best = None
    for a, b in P.facet_normals:
        if sum(a) >= b:
            continue
        # with Z the zero coordinates of a: g(lam*a + e_Z) <= lam*(<a,1> - b) + |Z|
        for lam in range(1, n + 2):
            p = tuple(x * lam + (1 if x == 0 else 0) for x in a)
            if min(p) >= 1 and g_value(P, p) < 0:
                p = primitive(p)
                if g_value(P, p) >= 0:
                    continue
                key = (pairing_min(P, p), p)
                if best is None or key < best[0]:
                    best = (key, p)
                break
    if best is None:
        raise ArithmeticError("no separating covector although 1 lies outside Gamma")
    return best[1]


def _minimal_covers(H: list, n: int):
    """Subsets of ``H`` of size <= n whose sum has every coordinate >= 1."""
    seen = set()

    def rec(start_sum, chosen):
        uncovered = [i for i in range(n) if start_sum[i] == 0]
        if not uncovered:
            key = tuple(sorted(chosen))
            if key not in seen:
                seen.add(key)
                yield start_sum
            return
        if len(chosen) == n:
            return
        i = uncovered[0]
        for idx, h in enumerate(H):
            if h[i] > 0 and idx not in chosen:
                yield from rec(tuple(a + b for a, b in zip(start_sum, h)), chosen | {idx})

    yield from rec((0,) * n, frozenset())


def mld_polygon(P: NewtonPolygon) -> MldResult:
    """Exact ``inf_p (<p,1> - <p,Gamma>)`` over positive integer covectors."""
    n = P.dim_ambient
    _check_dim(n)
    if not contains_one(P):
        p = minus_inf_witness(P)
        return MldResult(MINUS_INF, True, toric_certificate(P, p),
                         nu_upper=pairing_min(P, p))
    best = None
    for v, cons, rays in P.cones:
        H = hilbert_basis(cons, n, rays)
        for q in _minimal_covers(H, n):
            key = (g_value(P, q), q)
            if best is None or key < best:
                best = key
    value, p = best
    cert = toric_certificate(P, p)
    assert cert.log_discrepancy == value
    return MldResult(value, True, cert, nu_upper=cert.val)

