import random

import pytest
from hypothesis import given, strategies as st

from mldmj.errors import PointNotOnVariety, ResourceLimit
from mldmj.groebner import buchberger
from mldmj.jets import (embedding_dimension, initial_ideal, initial_ideal_jets, jet_dimension,
                        jet_equations, jets_certified, localize_at_origin, mld_via_jets,
                        order_of_ideal, s_m, s_profile)
from mldmj.results import MINUS_INF
from mldmj.ring import Poly, Ring, multiplicity, parse_poly, substitute, truncate_degree

from conftest import polys


def P(text, vars_="x,y,z", char=0):
    return parse_poly(text, vars_, char)


def test_jet_equations_examples():
    J = jet_equations([P("x*y", "x,y")], 2, 1)
    assert [str(e) for e in J.equations[0]] == ["x_0*y_0", "y_1*x_0 + x_1*y_0"]
    J = jet_equations([P("x^2", "x")], 1, 2)
    assert J.equations[0][2] == J.ring.parse("2*x_0*x_2 + x_1^2")
    J = jet_equations([P("x^2", "x", 2)], 1, 2)
    assert J.equations[0][2] == J.ring.parse("x_1^2")


def test_localize_examples():
    L = localize_at_origin(jet_equations([P("x*y", "x,y")], 2, 1))
    assert L.generators() == []
    L = localize_at_origin(jet_equations([P("x^3+y^4")], 3, 2))
    assert L.generators() == []
    L = localize_at_origin(jet_equations([P("z + x^2")], 3, 1))
    assert [str(g) for g in L.generators()] == ["z_1"]
    with pytest.raises(ValueError):
        localize_at_origin(L)


def _round_trip(f: Poly, m: int):
    J = jet_equations([f], None, m)
    names = J.ring.vars + ("t",)
    big = Ring(names, f.char)
    t = big.var(len(names) - 1)
    lift = lambda p: Poly._make({k + (0,): c for k, c in p.terms.items()}, names, f.char)  # noqa
    series = []
    for v in f.vars:
        s = big.zero()
        for j in range(m + 1):
            s = s + big.var(names.index(f"{v}_{j}")) * t ** j
        series.append(s)
    full = substitute(f, series)
    expected = big.zero()
    for j, e in enumerate(J.equations[0]):
        expected = expected + lift(e) * t ** j
    low = Poly._make({k: c for k, c in full.terms.items() if k[-1] <= m}, names, f.char)
    return low, expected


@given(polys(nvars=2, max_deg=3, max_terms=3, chars=(0, 2, 3)), st.integers(0, 3))
def test_series_round_trip(f, m):
    if not f.terms:
        return
    low, expected = _round_trip(f, m)
    assert low == expected


@given(polys(nvars=3, max_deg=4, max_terms=4), st.integers(1, 3))
def test_weight_homogeneity(f, m):
    if not f.terms:
        return
    J = jet_equations([f], None, m)
    for j, e in enumerate(J.equations[0]):
        assert all(J.weight(mon) == j for mon in e.terms)


@given(polys(nvars=3, max_deg=4, max_terms=4, min_deg=1), st.integers(1, 4))
def test_local_low_equations_vanish(f, m):
    if not f.terms:
        return
    L = jet_equations([f], None, m, local=True)
    for j, e in enumerate(L.equations[0]):
        if j < multiplicity(f):
            assert not e.terms


@given(polys(nvars=3, max_deg=4, max_terms=4, min_deg=1), st.integers(1, 3))
def test_localize_matches_direct_local(f, m):
    if not f.terms:
        return
    a = localize_at_origin(jet_equations([f], None, m))
    b = jet_equations([f], None, m, local=True)
    assert a.ring == b.ring and a.equations == b.equations


def test_s_m_examples():
    for m in range(4):
        assert s_m([P("z")], 3, 2, None, m).s == 2
    assert s_m([P("z^3", "w,x,y,z"), P("w^3", "w,x,y,z")], 4, 2, None, 2).s == -2
    assert s_m([P("x^4+y^4+z^4")], 3, 2, None, 3).s == -1
    assert s_m([P("x^2 - y", "x,y")], 2, 1, (1, 1), 2).s == 1
    with pytest.raises(PointNotOnVariety):
        s_m([P("x^2 + 1", "x,y")], 2, 1, None, 1)


def test_mld_via_jets_examples():
    r = mld_via_jets([P("x^2-y^3", "x,y")], 2, 1, None, 5)
    assert r.value == MINUS_INF and r.certified and r.certificate.level == 5
    assert r.nu_upper == 6
    r = mld_via_jets([P("x*y", "x,y")], 2, 1, None, 5)
    assert (r.value, r.certified, r.certificate.level) == (0, True, 1)
    r = mld_via_jets([P("x-y^2", "x,y")], 2, 1, None, 5)
    assert (r.value, r.certified) == (1, True)
    with pytest.raises(ValueError):
        mld_via_jets([P("x*y", "x,y")], 2, 1, None, 0)


def test_certified_flag_logic():
    assert jets_certified(1, 0, 5) and not jets_certified(1, 0, 4)
    assert not jets_certified(2, 0, 40) and jets_certified(2, 0, 41)
    assert not jets_certified(2, 2, 100)
    assert not jets_certified(3, 0, 1000)
    r = mld_via_jets([P("z")], 3, 2, None, 8)
    assert r.value == 2 and not r.certified


def test_budget_failure_keeps_lower_levels():
    f = P("x^2+y^3+z^4")
    with pytest.raises(ResourceLimit) as info:
        mld_via_jets([f], 3, 2, None, 8, budget=200)
    partial = info.value.partial
    statuses = [e.status for e in partial.profile]
    assert statuses[-1] == "budget-exceeded" and "computed" in statuses
    assert not partial.certified


def test_embedding_dimension_and_order():
    assert embedding_dimension([P("z + x^2")]) == 2
    assert embedding_dimension([P("x^2+y^2*z")]) == 3
    assert embedding_dimension([P("x*y", "x,y")]) == 2
    assert embedding_dimension([P("x - y^2", "x,y", 3)], x=(1, 1)) == 1
    assert order_of_ideal([P("x^2+y^5", "x,y")]) == 2
    assert order_of_ideal([P("x^2", "x,y"), P("x*y", "x,y"), P("y^3", "x,y")]) == 2
    assert order_of_ideal([P("x - 1", "x")], x=(1,)) == 1
    with pytest.raises(PointNotOnVariety):
        embedding_dimension([P("x - 1", "x")])


def test_initial_ideal():
    assert initial_ideal([P("x^2+y^2*z")]) == [P("x^2")]
    assert initial_ideal([P("x^2+y^3", "x,y")]) == [P("x^2", "x,y")]
    f = P("x^3+y^3+z^3")
    for m in range(4):
        assert initial_ideal_jets([f], 3, 2, m).s == s_m([f], 3, 2, None, m).s


@given(st.integers(0, 10 ** 6))
def test_s1_formula(seed):
    rng = random.Random(seed)
    R = Ring("x,y,z")
    f = R.zero()
    while not f.terms:
        for _ in range(3):
            mon = tuple(rng.randint(0, 3) for _ in range(3))
            if 1 <= sum(mon) <= 3:
                f = f + R.monomial(mon, rng.choice([1, -2, 3]))
    assert s_m([f], 3, 2, None, 1).s == 4 - embedding_dimension([f])


@given(polys(nvars=3, max_deg=6, max_terms=4, min_deg=1, chars=(0, 3, 5)), st.integers(1, 3))
def test_truncation_invariance(f, m):
    if not f.terms:
        return
    g = truncate_degree(f, m)
    for j in range(1, m + 1):
        a = jet_equations([f], None, j, local=True)
        b = jet_equations([g], None, j, local=True) if g.terms else None
        ga = a.generators()
        gb = b.generators() if b else []
        if not ga and not gb:
            continue
        assert buchberger(ga, ring=a.ring).generators == buchberger(gb, ring=a.ring).generators


def test_negative_scaling():
    # s_{2(m+1)-1} <= 2 s_m once s_m <= -1
    f = P("x^4+y^4", "x,y")
    s3 = s_m([f], 2, 1, None, 3).s
    assert s3 == -2
    assert s_m([f], 2, 1, None, 7).s <= 2 * s3
    emb5 = [P(t, "v,w,x,y,z") for t in ("v^2", "w^2", "z^2")]
    s1 = s_m(emb5, 5, 2, None, 1).s
    assert s1 == -1
    assert s_m(emb5, 5, 2, None, 3).s <= 2 * s1
    cusp = P("x^3+y^3", "x,y")
    s2 = s_m([cusp], 2, 1, None, 2).s
    assert s_m([cusp], 2, 1, None, 5).s <= 2 * s2


def test_cone_decomposition_small():
    f = P("x^3+y^3+z^3")
    for m in range(3, 6):
        assert jet_dimension([f], m) == jet_dimension([f], m - 3, local=False) + 2 * 3


def test_s_profile_stops_at_first_negative():
    cusp = P("x^2-y^3", "x,y")
    prof = s_profile([cusp], 2, 1, None, range(0, 9))
    assert [e.m for e in prof] == list(range(len(prof)))
    assert prof[-1].s < 0 and all(e.s >= 0 for e in prof[:-1])
    full = s_profile([cusp], 2, 1, None, range(0, 7), stop_negative=False)
    assert len(full) == 7


def test_s_profile_records_budget_failure():
    prof = s_profile([P("x^2+y^3+z^4")], 3, 2, None, range(0, 9), budget=2000)
    assert prof[-1].status == "budget-exceeded" and prof[-1].s is None
    assert all(e.status == "computed" for e in prof[:-1])
