"""Buchberger's algorithm over Q and F_p, with the ideal-theoretic queries built on it.

The engine uses the Gebauer-Moeller pair criteria and the sugar selection
strategy.  Every run has a step budget, one step being one term operation
of a reduction; exceeding it raises :class:`~mldmj.errors.ResourceLimit`
instead of truncating silently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ResourceLimit
from .ring import GREVLEX, MonomialOrder, Poly, Ring, inverse

try:  # exact rationals, much faster than Fraction inside the engine
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

DEFAULT_BUDGET = 1_000_000


def _mask(mon) -> int:
    m = 0
    for i, e in enumerate(mon):
        if e:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Engine:
    """State of one Groebner computation over packed monomials.

    A monomial is packed into one int ``P(m) = P(1) + L(m)`` with ``L`` linear,
    laid out so that integer comparison is the monomial order.  Hence
    ``P(ab) = P(a) + P(b) - P(1)``, leading terms come from the builtin
    ``max`` and a shift by ``s`` is the addition of ``L(s)``.

      grevlex  [deg | C - e_n | ... | C - e_1]
      grlex    [deg | e_1 | ... | e_n]
      lex      [e_1 | ... | e_n]

    (``e`` the permuted exponents.)  Field values stay below ``2**(W-1)``, so the top bit of each
    exponent field is a guard bit and divisibility is one subtraction.
    """

    W = 25
    C = 1 << 23

    def __init__(self, char: int, order: MonomialOrder, n: int, budget: int):
        self.p = char
        self.order = order
        self.n = n
        self.budget = budget
        self.steps = 0
        self.kind = order.kind
        perm = tuple(order.perm) if order.perm is not None else tuple(range(n))
        W = self.W
        # shift of the field holding original variable i, and its sign
        self.shift = [0] * n
        self.sign = [1] * n
        for k, i in enumerate(perm):
            self.shift[i] = W * (k if self.kind == "grevlex" else n - 1 - k)
            self.sign[i] = -1 if self.kind == "grevlex" else 1
        self.graded = self.kind != "lex"
        self.top = W * n
        self.fmask = (1 << W) - 1
        self.one = sum(self.C << self.shift[i] for i in range(n)) if self.kind == "grevlex" else 0
        self.low = (1 << self.top) - 1
        self.guard = sum(1 << (W * k + W - 1) for k in range(n))
        self._exps: dict = {}
        self._masks: dict = {}

    # -- packing ---------------------------------------------------------------
    def enc(self, mon) -> int:
        P = self.one
        for i, e in enumerate(mon):
            if e:
                if e >= self.C:
                    raise ResourceLimit("exponent too large for the packed representation")
                P += self.sign[i] * e << self.shift[i]
        if self.graded:
            d = sum(mon)
            if d >> self.W:
                raise ResourceLimit("degree too large for the packed representation")
            P += d << self.top
        self._exps[P] = tuple(mon)
        return P

    def exps(self, P: int) -> tuple:
        e = self._exps.get(P)
        if e is None:
            fm = self.fmask
            if self.kind == "grevlex":
                e = tuple(self.C - ((P >> s) & fm) for s in self.shift)
            else:
                e = tuple((P >> s) & fm for s in self.shift)
            self._exps[P] = e
        return e

    def coeff_in(self, c):
        return _rational(c.numerator, c.denominator) if not self.p else c

    def coeff_out(self, c):
        return Fraction(int(c.numerator), int(c.denominator)) if not self.p else c

    def encode(self, terms) -> dict:
        return {self.enc(m): self.coeff_in(c) for m, c in terms.items()}

    def decode(self, f: dict, ring: Ring) -> Poly:
        return Poly._make({self.exps(P): self.coeff_out(c) for P, c in f.items()},
                          ring.vars, ring.char)

    # -- monomial helpers --------------------------------------------------------
    def mask(self, P: int) -> int:
        r = self._masks.get(P)
        if r is None:
            r = self._masks[P] = _mask(self.exps(P))
        return r

    def divides(self, a: int, b: int) -> bool:
        G, low = self.guard, self.low
        if self.kind == "grevlex":  # fields hold C - e
            a, b = b, a
        return (((b & low) | G) - (a & low)) & G == G

    def disjoint(self, a: int, b: int) -> bool:
        return not (self.mask(a) & self.mask(b))

    def lcm(self, a: int, b: int) -> int:
        return self.enc(_lcm(self.exps(a), self.exps(b)))

    def degree(self, P: int) -> int:
        return P >> self.top if self.graded else sum(self.exps(P))

    def is_one(self, P: int) -> bool:
        return P == self.one

    # -- polynomial helpers ------------------------------------------------------
    @staticmethod
    def lead(f: dict) -> int:
        return max(f)

    def monic(self, f: dict) -> dict:
        c = f[max(f)]
        if self.p:
            inv = pow(c, -1, self.p)
            return {m: v * inv % self.p for m, v in f.items()}
        return {m: v / c for m, v in f.items()}

    def basis_entry(self, g: dict):
        lm = max(g)
        return (lm, lm & self.low, g)

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.budget:
            raise ResourceLimit(f"Groebner step budget {self.budget} exceeded")

    def sub_mul(self, f: dict, c, shift: int, g: dict):
        """f -= c * x^shift * g, in place (``shift`` is a packed difference)."""
        p = self.p
        get = f.get
        for m, gc in g.items():
            mm = m + shift
            v = get(mm, 0) - c * gc
            if p:
                v %= p
            if v:
                f[mm] = v
            else:
                del f[mm]
        self.tick(len(g))

    def reduce(self, f: dict, basis: list, full: bool = True) -> dict:
        """Normal form of ``f`` modulo ``basis`` (list of (lm, lm & low, monic poly))."""
        f = dict(f)
        rem = {}
        G, low = self.guard, self.low
        rev = self.kind == "grevlex"
        while f:
            m = max(f)
            c = f[m]
            em = m & low
            if rev:
                hit = next((b for b in basis if ((b[1] | G) - em) & G == G), None)
            else:
                em |= G
                hit = next((b for b in basis if (em - b[1]) & G == G), None)
            if hit is not None:
                self.sub_mul(f, c, m - hit[0], hit[2])
            else:
                if not full:
                    rem.update(f)
                    return rem
                rem[m] = c
                del f[m]
        return rem


@dataclass(frozen=True)
class IdealBasis:
    """A (reduced, once computed) Groebner basis together with its order."""

    generators: tuple
    order: MonomialOrder = GREVLEX
    reduced: bool = False
    vars: tuple = ()
    char: int = 0
    steps: int = 0

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def leading_monomials(self) -> list:
        return [max(g.terms, key=self.order.key) for g in self.generators]


@dataclass(frozen=True)
class LeadingTermIdeal:
    generators: tuple = field(default_factory=tuple)


def buchberger(gens: Sequence[Poly], order: MonomialOrder = GREVLEX,
               budget: int = DEFAULT_BUDGET, ring: Ring | None = None) -> IdealBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    >>> R = Ring("x,y")
    >>> x, y = R.gens
    >>> [str(g) for g in buchberger([x - y, x + y]).generators]
    ['x', 'y']
    """
    gens = [g for g in gens if g.terms]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.vars != ring.vars or g.char != ring.char:
            raise ValueError("generators must share variables and characteristic")
    eng = _Engine(ring.char, order, ring.nvars, budget)

    polys: list = []   # monic encoded dicts
    lms: list = []
    sugar: list = []
    active: list = []  # indices of current basis elements
    pairs: list = []   # (i, j) with i < j

    def add_poly(f: dict, s: int):
        f = eng.monic(f)
        h = len(polys)
        polys.append(f)
        lms.append(eng.lead(f))
        sugar.append(s)
        update(h)

    def update(h):
        nonlocal active, pairs
        lh = lms[h]
        cands = [(g, eng.lcm(lms[g], lh)) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cands):
            if eng.disjoint(lms[g], lh) or not any(
                    eng.divides(l2, l) for _, l2 in cands[idx + 1:] + kept):
                kept.append((g, l))
        new_pairs = [(g, h) for g, l in kept if not eng.disjoint(lms[g], lh)]
        survivors = []
        for (a, b) in pairs:
            l = eng.lcm(lms[a], lms[b])
            if (eng.divides(lh, l) and eng.lcm(lms[a], lh) != l and eng.lcm(lms[b], lh) != l):
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        active = [g for g in active if not eng.divides(lh, lms[g])] + [h]

    def current_basis():
        return [(lms[i], lms[i] & eng.low, polys[i]) for i in active]

    def is_constant(r):
        return all(eng.is_one(m) for m in r)

    init = []
    for g in gens:
        d = eng.encode(g.terms)
        init.append((max(map(eng.degree, d)), d))
    init.sort(key=lambda t: (t[0], eng.lead(t[1])))
    for s, d in init:
        r = eng.reduce(d, current_basis())
        if r:
            if is_constant(r):
                return _unit(ring, order, eng.steps)
            add_poly(r, s)

    keys: dict = {}

    def pkey(pr):
        k = keys.get(pr)
        if k is None:
            a, b = pr
            l = eng.lcm(lms[a], lms[b])
            dl = eng.degree(l)
            s = max(sugar[a] + dl - eng.degree(lms[a]), sugar[b] + dl - eng.degree(lms[b]))
            k = keys[pr] = (s, l, a, b)
        return k

    while pairs:
        best = min(pairs, key=pkey)
        pairs.remove(best)
        s, l, a, b = keys.pop(best)
        sa = l - lms[a]
        sb = l - lms[b]
        spoly = {m + sa: c for m, c in polys[a].items()}
        eng.sub_mul(spoly, 1, sb, polys[b])
        if not spoly:
            continue
        r = eng.reduce(spoly, current_basis())
        if r:
            if is_constant(r):
                return _unit(ring, order, eng.steps)
            add_poly(r, s)

    # interreduce to the reduced basis
    basis = [polys[i] for i in active]
    reduced = []
    for i, f in enumerate(basis):
        others = [eng.basis_entry(g) for j, g in enumerate(basis) if j != i]
        reduced.append(eng.monic(eng.reduce(f, others)))
    reduced.sort(key=eng.lead, reverse=True)
    out = tuple(eng.decode(f, ring) for f in reduced)
    return IdealBasis(out, order, True, ring.vars, ring.char, eng.steps)


def _unit(ring: Ring, order, steps) -> IdealBasis:
    return IdealBasis((ring.const(1),), order, True, ring.vars, ring.char, steps)


def normal_form(f: Poly, I: IdealBasis, budget: int = DEFAULT_BUDGET) -> Poly:
    eng = _Engine(I.char, I.order, I.nvars, budget)
    basis = [eng.basis_entry(eng.monic(eng.encode(g.terms))) for g in I.generators]
    return eng.decode(eng.reduce(eng.encode(f.terms), basis), f.ring)


def is_member(f: Poly, I: IdealBasis) -> bool:
    return not normal_form(f, I)


def contains_one(I: IdealBasis) -> bool:
    return any(g.terms and all(sum(m) == 0 for m in g.terms) for g in I.generators)


def leading_term_ideal(I: IdealBasis) -> LeadingTermIdeal:
    lms = sorted(set(I.leading_monomials()))
    minimal = [m for m in lms if not any(o != m and _divides(o, m) for o in lms)]
    return LeadingTermIdeal(tuple(minimal))


def monomial_dimension(monomials: Sequence, nvars: int) -> int:
    """Krull dimension of k[x]/(monomials): largest independent variable set.

    Computed as ``nvars`` minus a minimum hitting set of the monomial supports
    (branch and bound); -1 when the ideal contains 1.
    """
    supports = []
    for m in monomials:
        s = frozenset(i for i, e in enumerate(m) if e)
        if not s:
            return -1
        supports.append(s)
    supports = [s for s in set(supports) if not any(o < s for o in supports)]
    best = [nvars]

    def search(chosen: frozenset, remaining: list):
        if len(chosen) >= best[0]:
            return
        open_ = [s for s in remaining if not (s & chosen)]
        if not open_:
            best[0] = len(chosen)
            return
        # lower bound: greedily pick disjoint supports
        lb, used = 0, set()
        for s in sorted(open_, key=len):
            if not (s & used):
                lb += 1
                used |= s
        if len(chosen) + lb >= best[0]:
            return
        target = min(open_, key=len)
        for v in sorted(target):
            search(chosen | {v}, open_)

    search(frozenset(), supports)
    return nvars - best[0]


def dimension(I: IdealBasis, nvars: int | None = None) -> int:
    """Krull dimension of the quotient ring; -1 for the unit ideal."""
    n = I.nvars if nvars is None else nvars
    if contains_one(I):
        return -1
    return monomial_dimension(leading_term_ideal(I).generators, n)


def height(I: IdealBasis, nvars: int | None = None) -> int:
    n = I.nvars if nvars is None else nvars
    d = dimension(I, n)
    return n + 1 if d < 0 else n - d


def torus_has_zero(gens: Sequence[Poly], nvars: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> bool:
    """Whether the polynomials have a common zero with all coordinates nonzero (over k-bar).

    Rabinowitsch trick: adjoin ``w`` and ask whether ``1 - w*x_1*...*x_n`` together
    with ``gens`` generates the unit ideal.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return True
    ring = gens[0].ring
    n = ring.nvars if nvars is None else nvars
    wname = "_w"
    while wname in ring.vars:
        wname += "_"
    big = Ring(ring.vars + (wname,), ring.char)
    lifted = [Poly._make({m + (0,): c for m, c in g.terms.items()}, big.vars, big.char)
              for g in gens]
    prod_mon = tuple([1] * n + [0] * (ring.nvars - n) + [1])
    rab = big.const(1) - big.monomial(prod_mon)
    I = buchberger(lifted + [rab], budget=budget, ring=big)
    return not contains_one(I)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic (w.r.t. grevlex) gcd of two multivariate polynomials, via sympy's sparse gcd."""
    from sympy.polys.domains import GF, QQ
    from sympy.polys.rings import ring as sparse_ring

    f._check(g)
    if not f.terms:
        return _monic_poly(g)
    if not g.terms:
        return _monic_poly(f)
    p = f.char
    K = GF(p) if p else QQ
    R = sparse_ring(",".join(f"v{i}" for i in range(f.nvars)), K)[0]

    def to_sympy(h: Poly):
        return R.from_dict({m: K(c) if p else K(c.numerator, c.denominator)
                            for m, c in h.terms.items()})

    d = to_sympy(f).gcd(to_sympy(g))
    terms = {m: (int(c) % p if p else Fraction(int(c.numerator), int(c.denominator)))
             for m, c in d.to_dict().items()}
    return _monic_poly(Poly._make(terms, f.vars, f.char))


def _monic_poly(f: Poly) -> Poly:
    if not f.terms:
        return f
    lm = max(f.terms, key=GREVLEX.key)
    return f.scale(inverse(f.terms[lm], f.char))


def divide(f: Poly, g: Poly):
    """Multivariate division of ``f`` by the single polynomial ``g`` (grevlex)."""
    eng = _Engine(f.char, GREVLEX, f.nvars, 10 ** 12)
    gg = eng.encode(g.terms)
    lm = eng.lead(gg)
    lc = gg[lm]
    rem = eng.encode(f.terms)
    quo: dict = {}
    out_rem: dict = {}
    while rem:
        m = eng.lead(rem)
        if eng.divides(lm, m):
            c = rem[m] * pow(lc, -1, f.char) % f.char if f.char else rem[m] / lc
            shift = m - lm
            quo[shift + eng.one] = c
            eng.sub_mul(rem, c, shift, gg)
        else:
            out_rem[m] = rem.pop(m)
    return eng.decode(quo, f.ring), eng.decode(out_rem, f.ring)
