from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mldmj.errors import CharacteristicUnsupported, ParseError, ZeroPolynomial
from mldmj.ring import (Ring, derivative, homogeneous_part, infer_vars, initial_form,
                        multiplicity, parse_poly, squarefree_decomposition, squarefree_pattern,
                        substitute, translate, truncate_degree)

from conftest import polys


def test_parse_and_print_round_trip():
    R = Ring("x,y")
    f = R.parse("(x + y)^2")
    assert str(f) == "x^2 + 2*x*y + y^2"
    g = R.parse("-1/2*y^3 + x + 2")
    assert R.parse(str(g)) == g
    assert R.parse("x**3") == R.parse("x*x*x")


def test_parse_errors():
    R = Ring("x,y")
    for bad in ["", "x+", "x^-1", "q", "(x", "x^y"]:
        with pytest.raises(ParseError):
            R.parse(bad)


def test_characteristic_arithmetic():
    R = Ring("x,y", 2)
    x, y = R.gens
    assert (x + y) ** 2 == x * x + y * y
    R3 = Ring("x", 3)
    assert R3.parse("1/2*x") == R3.parse("2*x")
    with pytest.raises(CharacteristicUnsupported):
        Ring("x", 4)


def test_mixed_rings_rejected():
    with pytest.raises(ValueError):
        Ring("x,y").parse("x") + Ring("x,y", 3).parse("x")
    with pytest.raises(ValueError):
        Ring("x,y").parse("x") + Ring("x,z").parse("x")


def test_multiplicity_and_initial_form():
    R = Ring("x,y,z")
    f = R.parse("x^2 + y^3 + x*y*z")
    assert multiplicity(f) == 2
    assert initial_form(f) == R.parse("x^2")
    assert multiplicity(R.zero()) == float("inf")
    with pytest.raises(ZeroPolynomial):
        initial_form(R.zero())
    assert truncate_degree(f, 2) == R.parse("x^2")


def test_translate_and_evaluate():
    R = Ring("x,y")
    f = R.parse("x^2 - y")
    g = translate(f, (1, 1))
    assert g.constant_term() == 0
    assert g == R.parse("x^2 + 2*x - y")
    assert f.evaluate((Fraction(1, 2), Fraction(1, 4))) == 0


def test_infer_vars():
    assert infer_vars(["y*z + x", "w"]) == ("w", "x", "y", "z")


@pytest.mark.parametrize("text,char,pattern", [
    ("y*z*(y+z)", 0, [1, 1, 1]),
    ("y^2*z", 0, [2, 1]),
    ("y^3", 0, [3]),
    ("y^2+z^2", 0, [1, 1]),
    ("y^2+z^2", 2, [2]),
    ("(y^2+z^2)^3*(y-z)^5", 3, [5, 3, 3]),
    ("y*z*(y+z)*(y-z)", 0, [1, 1, 1, 1]),
    ("y^3*z", 0, [3, 1]),
])
def test_squarefree_pattern(text, char, pattern):
    h = parse_poly(text, "y,z", char)
    assert squarefree_pattern(h) == pattern


@given(polys(nvars=3, max_deg=4))
def test_ring_axioms(f):
    R = f.ring
    g = R.parse("x - 2*y + 1")
    assert (f + g) - g == f
    assert f * (g + R.const(1)) == f * g + f
    assert parse_poly(str(f), f.vars, f.char) == f


@given(polys(nvars=2, max_deg=3), polys(nvars=2, max_deg=3))
def test_product_rule(f, g):
    if f.char != g.char:
        return
    for i in range(2):
        assert derivative(f * g, i) == derivative(f, i) * g + f * derivative(g, i)


@given(polys(nvars=3, max_deg=4, chars=(0,)), st.integers(1, 4))
def test_homogeneous_parts_sum_to_f(f, m):
    total = f.zero_like()
    for d in range(f.total_degree() + 1):
        total = total + homogeneous_part(f, d)
    assert total == f
    assert truncate_degree(f, m).total_degree() <= m


@given(polys(nvars=2, max_deg=4, chars=(0, 3, 5)))
def test_substitute_identity(f):
    assert substitute(f, list(f.ring.gens)) == f


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4),
       st.sampled_from([0, 3, 5, 7]))
def test_squarefree_decomposition_reassembles(lines, char):
    R = Ring("y,z", char)
    h = R.const(1)
    for a, b in lines:
        if a % (char or 99) or b % (char or 99):
            h = h * R.parse(f"{a}*y + {b}*z")
    if h.total_degree() < 1:
        return
    prod = R.const(1)
    for g, k in squarefree_decomposition(h):
        prod = prod * g ** k
    # equal up to a nonzero constant
    lead = max(h.terms)
    scale = h.terms[lead] * (pow(prod.terms[lead], -1, char) if char else 1 / prod.terms[lead])
    assert prod.scale(scale) == h
    assert sum(squarefree_pattern(h)) == h.total_degree()
