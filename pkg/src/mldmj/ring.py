"""Exact multivariate polynomials over Q and prime fields F_p.

A :class:`Poly` is an immutable mapping from exponent tuples to nonzero
coefficients, tagged with its variable names and characteristic.  Rational
coefficients are :class:`fractions.Fraction`; residues mod ``p`` are plain ints
in ``[0, p)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Iterable, Mapping, Sequence

from .errors import CharacteristicUnsupported, ParseError, ZeroPolynomial

Monomial = tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_char(char: int) -> int:
    char = int(char)
    if char != 0 and not is_prime(char):
        raise CharacteristicUnsupported(f"characteristic {char} is not 0 or a prime")
    return char


def coerce(c, char: int):
    """Map an int/Fraction (or residue) into the coefficient field."""
    if char == 0:
        return Fraction(c)
    if isinstance(c, Fraction):
        den = c.denominator % char
        if den == 0:
            raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {char}")
        return c.numerator * pow(den, -1, char) % char
    return int(c) % char


def inverse(c, char: int):
    if char == 0:
        return 1 / c
    return pow(c, -1, char)


class Poly:
    """Immutable polynomial with exact coefficients.

    >>> R = Ring("x,y")
    >>> x, y = R.gens
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("terms", "vars", "char", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], vars: Sequence[str], char: int = 0,
                 *, _trusted: bool = False):
        self.vars = tuple(vars)
        self.char = char
        if _trusted:
            self.terms = terms
        else:
            n = len(self.vars)
            clean = {}
            for mon, c in terms.items():
                mon = tuple(int(e) for e in mon)
                if len(mon) != n or any(e < 0 for e in mon):
                    raise ValueError(f"bad exponent vector {mon} for {n} variables")
                c = coerce(c, char)
                if c:
                    c = clean.get(mon, 0) + c
                    if char:
                        c %= char
                    if c:
                        clean[mon] = c
                    else:
                        clean.pop(mon, None)
            self.terms = clean
        self._hash = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _make(cls, terms, vars, char):
        return cls(terms, vars, char, _trusted=True)

    def zero_like(self) -> "Poly":
        return Poly._make({}, self.vars, self.char)

    def const_like(self, c) -> "Poly":
        c = coerce(c, self.char)
        return Poly._make({(0,) * len(self.vars): c} if c else {}, self.vars, self.char)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def ring(self) -> "Ring":
        return Ring(self.vars, self.char)

    # -- basic queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> list:
        return sorted(self.terms)

    def coeff(self, mon: Monomial):
        return self.terms.get(tuple(mon), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def evaluate(self, point: Sequence) -> object:
        pt = [coerce(a, self.char) for a in point]
        total = 0
        for mon, c in self.terms.items():
            t = c
            for a, e in zip(pt, mon):
                if e:
                    t = t * a ** e
            total += t
        return coerce(total, self.char) if self.char else total

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.char != other.char:
            raise ValueError(f"characteristic mismatch: {self.char} vs {other.char}")
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.const_like(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.char
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._make(out, self.vars, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.char
        if p:
            return Poly._make({m: (-c) % p for m, c in self.terms.items()}, self.vars, p)
        return Poly._make({m: -c for m, c in self.terms.items()}, self.vars, p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = coerce(c, self.char)
        if not c:
            return self.zero_like()
        p = self.char
        if p:
            return Poly._make({m: v * c % p for m, v in self.terms.items()}, self.vars, p)
        return Poly._make({m: v * c for m, v in self.terms.items()}, self.vars, p)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        p = self.char
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Poly._make(out, self.vars, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.const_like(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.const_like(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.char == other.char and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.char, frozenset(self.terms.items())))
        return self._hash

    # -- printing -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[mon]
            body = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, mon) if e
            )
            neg = self.char == 0 and c < 0
            a = -c if neg else c
            if body:
                cs = "" if a == 1 else f"{a}*"
                term = cs + body
            else:
                term = str(a)
            parts.append(("-", term) if neg else ("+", term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.vars}, char={self.char})"


@dataclass(frozen=True)
class Ring:
    """Variable names plus characteristic; a factory for polynomials."""

    vars: tuple
    char: int = 0

    def __init__(self, vars, char: int = 0):
        if isinstance(vars, str):
            vars = [v.strip() for v in vars.split(",") if v.strip()]
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "char", check_char(char))

    @property
    def nvars(self):
        return len(self.vars)

    @property
    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, i: int) -> Poly:
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly._make({mon: coerce(1, self.char)}, self.vars, self.char)

    def const(self, c) -> Poly:
        return Poly._make({}, self.vars, self.char).const_like(c)

    def zero(self) -> Poly:
        return Poly._make({}, self.vars, self.char)

    def monomial(self, exps, c=1) -> Poly:
        return Poly({tuple(exps): c}, self.vars, self.char)

    def from_terms(self, terms: Mapping) -> Poly:
        return Poly(terms, self.vars, self.char)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.vars, self.char)


# ---------------------------------------------------------------------------
# monomial orders


def grevlex_key(mon):
    return (sum(mon), tuple(-e for e in reversed(mon)))


def grlex_key(mon):
    return (sum(mon), tuple(mon))


def lex_key(mon):
    return tuple(mon)


_KEYS = {"grevlex": grevlex_key, "grlex": grlex_key, "lex": lex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``kind`` in {grevlex, grlex, lex} applied after ``perm``.

    ``perm[k]`` is the index of the variable that plays the role of the k-th
    variable of the order; the identity by default.
    """

    kind: str = "grevlex"
    perm: tuple | None = None

    def __post_init__(self):
        if self.kind not in _KEYS:
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, mon):
        if self.perm is not None:
            mon = tuple(mon[i] for i in self.perm)
        return _KEYS[self.kind](mon)


GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^/()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, ring: Ring):
        self.toks = tokens
        self.i = 0
        self.ring = ring
        self.index = {v: k for k, v in enumerate(ring.vars)}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                p = p + t if val == "+" else p - t
            else:
                return p

    def term(self) -> Poly:
        p = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.power()
            else:
                return p

    def power(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ParseError("exponent must be a nonnegative integer literal")
            return base ** e
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            nk, nv = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv = self.take()
                if dk != "num" or dv == 0:
                    raise ParseError("rational literal needs a nonzero integer denominator")
                try:
                    return self.ring.const(Fraction(val, dv))
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc)) from None
            return self.ring.const(val)
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}; known: {', '.join(self.ring.vars)}")
            return self.ring.var(self.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError("unexpected end of input" if val is None else f"unexpected token {val!r}")


def parse_poly(text: str, vars, char: int = 0) -> Poly:
    """Parse ``text`` (operators ``+ - * ^``, integer and ``a/b`` literals)."""
    ring = Ring(vars, char)
    return _Parser(_tokenize(text), ring).parse()


def infer_vars(texts: Iterable[str]) -> tuple:
    """Variable names appearing in ``texts``, sorted."""
    seen = set()
    for t in texts:
        seen.update(val for kind, val in _tokenize(t) if kind == "name")
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# order / degree machinery


def multiplicity(f: Poly):
    """Lowest total degree in the support; ``math.inf`` for the zero polynomial."""
    if not f.terms:
        return inf
    return min(sum(m) for m in f.terms)


def homogeneous_part(f: Poly, d: int) -> Poly:
    return Poly._make({m: c for m, c in f.terms.items() if sum(m) == d}, f.vars, f.char)


def initial_form(f: Poly) -> Poly:
    if not f.terms:
        raise ZeroPolynomial("initial form of the zero polynomial")
    return homogeneous_part(f, multiplicity(f))


def truncate_degree(f: Poly, m: int) -> Poly:
    if m < 0:
        raise ValueError("truncation degree must be nonnegative")
    return Poly._make({k: c for k, c in f.terms.items() if sum(k) <= m}, f.vars, f.char)


def derivative(f: Poly, var: int) -> Poly:
    p = f.char
    out = {}
    for mon, c in f.terms.items():
        e = mon[var]
        if e == 0:
            continue
        v = c * e
        if p:
            v %= p
        if v:
            out[mon[:var] + (e - 1,) + mon[var + 1:]] = v
    return Poly._make(out, f.vars, f.char)


def substitute(f: Poly, assignment: Sequence[Poly], trunc: int | None = None) -> Poly:
    """Compose ``f`` with ``x_i -> assignment[i]``, truncating at degree ``trunc``.

    All assigned polynomials must share a ring (possibly different from f's).
    """
    if len(assignment) != f.nvars:
        raise ValueError(f"need {f.nvars} substitutions, got {len(assignment)}")
    target = assignment[0] if assignment else None
    if target is None:
        return f
    for a in assignment:
        target._check(a)
    if target.char != f.char:
        raise ValueError("characteristic mismatch in substitution")

    def cut(p: Poly) -> Poly:
        return truncate_degree(p, trunc) if trunc is not None else p

    powers: list[list] = [[target.const_like(1)] for _ in assignment]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cut(cache[-1] * assignment[i]))
        return cache[e]

    result = target.zero_like()
    for mon, c in f.terms.items():
        t = target.const_like(c)
        for i, e in enumerate(mon):
            if e:
                t = cut(t * power(i, e))
                if not t:
                    break
        result = result + t
    return cut(result)


def translate(f: Poly, point: Sequence) -> Poly:
    """``f(x + point)``: moves ``point`` to the origin."""
    R = f.ring
    return substitute(f, [g + a for g, a in zip(R.gens, point)])


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)


def _utrim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _udivmod(a: list, b: list, char: int):
    a = list(a)
    b = _utrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = inverse(b[-1], char)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(_utrim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv
        if char:
            c %= char
        q[shift] = c
        for i, bc in enumerate(b):
            v = a[shift + i] - c * bc
            a[shift + i] = v % char if char else v
        a.pop()
    return _utrim(q), _utrim(a)


def _umonic(a: list, char: int) -> list:
    a = _utrim(list(a))
    if not a:
        return a
    inv = inverse(a[-1], char)
    return [(c * inv) % char if char else c * inv for c in a]


def _ugcd(a: list, b: list, char: int) -> list:
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b, char)
        a, b = b, r
    return _umonic(a, char)


def _uderiv(a: list, char: int) -> list:
    out = [c * i for i, c in enumerate(a)][1:]
    if char:
        out = [c % char for c in out]
    return _utrim(out)


def _usqf(a: list, char: int) -> list:
    """Squarefree decomposition of a nonconstant univariate polynomial.

    Returns ``[(factor, multiplicity)]`` with monic squarefree, pairwise coprime
    factors; handles the char-p branch where the derivative vanishes.
    """
    a = _umonic(a, char)
    out = []
    c = _ugcd(a, _uderiv(a, char), char)
    w, _ = _udivmod(a, c, char)
    i = 1
    while len(w) > 1:
        y = _ugcd(w, c, char)
        z, _ = _udivmod(w, y, char)
        if len(z) > 1:
            out.append((_umonic(z, char), i))
        i += 1
        w = y
        c, _ = _udivmod(c, y, char)
    if len(_utrim(c)) > 1:
        # c is a p-th power: over F_p, x -> x^(1/p) fixes coefficients
        root = c[::char]
        for fac, k in _usqf(root, char):
            out.append((fac, k * char))
    return out


# ---------------------------------------------------------------------------
# binary forms


def _binary_parts(h: Poly):
    if h.nvars != 2:
        raise ValueError("expected a polynomial in exactly two variables")
    if not h.terms:
        raise ZeroPolynomial("binary form is zero")
    if not h.is_homogeneous():
        raise ValueError("expected a homogeneous binary form")
    n = h.total_degree()
    # h(y, z) = z^e * H(y/z) with H of degree n - e; e counts the root z = 0
    dense = [0] * (n + 1)
    for (a, _b), c in h.terms.items():
        dense[a] = c
    e = n - max(a for a, _ in h.terms)
    return n, e, _utrim(dense)


def squarefree_decomposition(h: Poly) -> list:
    """Factor a binary form into coprime squarefree binary forms with multiplicities.

    Returns ``[(g, k)]`` with ``h = unit * prod g^k``; no root finding is used,
    only gcds (plus p-th root extraction in characteristic p).
    """
    n, e, dense = _binary_parts(h)
    ring = h.ring
    y, z = ring.gens
    out = []
    if e:
        out.append((z, e))
    if len(dense) > 1:
        for fac, k in _usqf(dense, h.char):
            d = len(fac) - 1
            g = ring.zero()
            for i, c in enumerate(fac):
                if c:
                    g = g + ring.monomial((i, d - i), c)
            out.append((g, k))
    out.sort(key=lambda t: (-t[1], t[0].total_degree()))
    return out


def squarefree_pattern(h: Poly) -> list:
    """Root multiplicities of a binary form over the algebraic closure, descending.

    >>> R = Ring("y,z", 2)
    >>> squarefree_pattern(R.parse("y^2 + z^2"))
    [2]
    """
    pattern = []
    for g, k in squarefree_decomposition(h):
        pattern.extend([k] * g.total_degree())
    return sorted(pattern, reverse=True)
