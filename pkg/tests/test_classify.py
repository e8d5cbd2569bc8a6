import random

import pytest

from mldmj.classify import (classify_curve, classify_surface_double, dispatch_surface,
                            is_maximal_type, minimal_embedding, tschirnhausen_normalize)
from mldmj.errors import CharacteristicUnsupported, NormalizationFailed, PointNotOnVariety
from mldmj.fixtures import SURFACES, revalidate
from mldmj.jets import CURVE_BOUND, mld_via_jets, s_profile
from mldmj.results import MINUS_INF, BlowupChain, ClassLabel, ToricCovector
from mldmj.ring import Ring, parse_poly, substitute


def P(text, vars_="x,y,z", char=0):
    return parse_poly(text, vars_, char)


# ---------------------------------------------------------------- curves

@pytest.mark.parametrize("text,value,kE,label", [
    ("x*y", 0, 1, "node"),
    ("x^2-y^3", MINUS_INF, 4, "double-tangent"),
    ("x^3+y^3", MINUS_INF, 1, "mult-ge-3"),
    ("x-y^2", 1, 1, "smooth"),
])
def test_curve_table(text, value, kE, label):
    r = classify_curve(P(text, "x,y"))
    assert r.value == value and r.certified and r.label == label
    assert isinstance(r.certificate, BlowupChain) and r.certificate.kE == kE


def test_node_certificate_val_and_cusp_toric_check():
    assert classify_curve(P("x*y", "x,y")).certificate.val == 2
    c = classify_curve(P("x^2-y^3", "x,y")).certificate
    assert c.p == (3, 2) and c.val == 6 and c.val_lower_bound


def test_curve_at_a_point():
    f = P("(x-1)^2-(y-2)^3", "x,y")
    assert classify_curve(f, (1, 2)).value == MINUS_INF
    with pytest.raises(PointNotOnVariety):
        classify_curve(f, (0, 0))


def test_tangent_not_along_axis():
    # the double tangent is x + y; still a cusp after the linear change
    r = classify_curve(P("(x+y)^2 + x^3", "x,y"))
    assert r.value == MINUS_INF and r.certificate.description.startswith("E3")


def test_random_curves_agree_with_jets():
    rng = random.Random(11)
    R = Ring("x,y")
    done = 0
    while done < 20:
        f = R.zero()
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, 6)
            a = rng.randint(0, d)
            f = f + R.monomial((a, d - a), rng.choice([-2, -1, 1, 3]))
        if not f.terms:
            continue
        done += 1
        exact = classify_curve(f)
        jets = mld_via_jets([f], 2, 1, None, CURVE_BOUND)
        assert jets.certified and jets.value == exact.value, str(f)


# ---------------------------------------------------------------- normalization

def test_tschirnhausen_examples():
    h, exact = tschirnhausen_normalize(P("x^2+x*y+z^3"))
    assert h == P("z^3-1/4*y^2", "y,z") and exact
    h, exact = tschirnhausen_normalize(P("x^2+y^2*z"))
    assert h == P("y^2*z", "y,z") and exact
    with pytest.raises(CharacteristicUnsupported):
        tschirnhausen_normalize(P("x^2+y^3+z^3", char=2))
    with pytest.raises(NormalizationFailed):
        tschirnhausen_normalize(P("x^3+y^3+z^3"))


def test_tschirnhausen_series_case():
    # x^2 + x*y^2 + z^3: phi = -y^2/2 is exact, h = z^3 - y^4/4
    h, exact = tschirnhausen_normalize(P("x^2+x*y^2+z^3"))
    assert h == P("z^3-1/4*y^4", "y,z") and exact
    # x^2 + x^3 + y^2 + z^2: x is solved as a genuine power series
    h, exact = tschirnhausen_normalize(P("x^2+x^3+y*z"), trunc=8)
    assert not exact and h == P("y*z", "y,z")


# ---------------------------------------------------------------- surfaces

def _normalized(sc):
    # certificates refer to the normal form x^2 + h(y, z)
    x = P("x")
    h = substitute(sc.h, [P("y"), P("z")])
    return x * x + h


@pytest.mark.parametrize("text,label,value,p", SURFACES)
def test_surface_table(text, label, value, p):
    r, sc = classify_surface_double(P(text))
    assert sc.label == label and r.value == value and r.certified
    if p is not None:
        assert r.certificate.p == p
    revalidate(P(text), r)


@pytest.mark.parametrize("text,label,value", [
    ("x^2+y^2+z^3", "mult-h-2", 1),
    ("x^2+y^3+z^4", "A3-2", 1),
    ("x^2+y^3+z^6", "A3-2", 0),
    ("x^2+y^3+y*z^4", "A3-2", 0),
    ("x^2+(y-z^2)^3+z^7", "A3-1", MINUS_INF),
    ("x^2+y^5+z^5", "mult-h-ge-5", MINUS_INF),
    ("x^2+y^2*(y+z)^2+z^5", "B3-1", 0),
])
def test_more_double_points(text, label, value):
    r, sc = classify_surface_double(P(text))
    assert (sc.label, r.value) == (label, value)
    revalidate(_normalized(sc), r)


def test_b32_needs_resolution_when_not_toric():
    r, sc = classify_surface_double(P("x^2+y^2*z^2+z^5"))
    assert sc.label == "B3-2" and r.value == 0
    assert isinstance(r.certificate, ClassLabel)
    assert r.certificate.provenance == "explicit-resolution"
    r, _ = classify_surface_double(P("x^2+y^2*z^2"))
    assert isinstance(r.certificate, ToricCovector)


def _change_yz(f, M):
    x, y, z = f.ring.gens
    return substitute(f, [x, y.scale(M[0][0]) + z.scale(M[0][1]),
                          y.scale(M[1][0]) + z.scale(M[1][1])])


@pytest.mark.parametrize("text,label,value,p", SURFACES)
def test_linear_change_invariance(text, label, value, p):
    rng = random.Random(sum(map(ord, text)))
    for _ in range(3):
        M = [[0, 0], [0, 0]]
        while M[0][0] * M[1][1] - M[0][1] * M[1][0] == 0:
            M = [[rng.randint(-2, 3) for _ in range(2)] for _ in range(2)]
        r, _sc = classify_surface_double(_change_yz(P(text), M))
        assert r.value == value


def test_change_mixing_x_keeps_value():
    # x is mixed in too, so the splitting may need a power series
    for text, _label, value, _p in SURFACES:
        x, y, z = P(text).ring.gens
        f = substitute(P(text), [x + y, y + z, z + x])   # det 2
        r, _sc = classify_surface_double(f)
        assert r.value == value


def test_surface_at_translated_point():
    f = P("(x-1)^2+(y+1)^2*z")
    r, sc = classify_surface_double(f, point=(1, -1, 0))
    assert sc.label == "A2" and r.value == 1


def test_route_agreement_with_cheap_jets():
    # every computed s_m bounds the classifier value from above
    for text, label, value, _p in SURFACES:
        if value == MINUS_INF:
            continue
        prof = s_profile([P(text)], 3, 2, None, range(0, 4))
        assert all(e.s >= value for e in prof if e.status == "computed"), label
    # the A1 certificate has level val - 1 = 5, which is still computable
    prof = s_profile([P("x^2+y*z*(y+z)")], 3, 2, None, range(0, 6))
    assert min(e.s for e in prof) == 1


# ---------------------------------------------------------------- dispatch

def test_is_maximal_type():
    assert is_maximal_type([P("x*y+z^2", "w,x,y,z"), P("z*w+x^2", "w,x,y,z")]) == (True, 2, 2)
    assert is_maximal_type([P("x^3+y^3+z^3")]) == (True, 1, 3)
    assert is_maximal_type([P("x^2+y^3+z^5")])[0] is False
    assert is_maximal_type([P("z+x^2")])[0] is False


def test_minimal_embedding_eliminates_linear_variables():
    gens = [P("w-x^2", "w,x,y,z"), P("w^2+y^2+z^3", "w,x,y,z")]
    red = minimal_embedding(gens)
    assert len(red) == 1 and red[0].vars == ("x", "y", "z")
    assert red[0] == P("x^4+y^2+z^3")


def test_dispatch_cases():
    assert dispatch_surface([P("z-x^2-y^2")]).value == 2
    r = dispatch_surface([P("v^2", "v,w,x,y,z"), P("w^2", "v,w,x,y,z"), P("z^2", "v,w,x,y,z")])
    assert r.value == MINUS_INF and r.label == "case-1" and r.profile[0].s == -1
    r = dispatch_surface([P("z^3", "w,x,y,z"), P("w^3", "w,x,y,z")])
    assert r.label == "case-2" and r.profile[0].s == -2
    r = dispatch_surface([P("x^4+y^4+z^4")])
    assert r.label == "case-4" and r.profile[0].s == -1
    r = dispatch_surface([P("x^2+y^2*z")])
    assert r.value == 1 and r.certified


def test_dispatch_maximal_type_is_uncertified():
    r = dispatch_surface([P("x^3+y^3+z^3")], bound=4)
    assert r.label == "case-5" and r.value == 0 and not r.certified
    gens = [P("x*y+z^2", "w,x,y,z"), P("z*w+x^2", "w,x,y,z")]
    r = dispatch_surface(gens, bound=3)
    assert r.label == "case-3" and not r.certified


def test_dispatch_via_embedding_in_four_space():
    # w = x*y + z^2 is eliminated; what remains is the pinch point
    gens = [P("w-x*y", "w,x,y,z"), P("x^2+y^2*z+w^3", "w,x,y,z")]
    r = dispatch_surface(gens)
    assert r.value == 1


def test_dispatch_char_two():
    with pytest.raises(CharacteristicUnsupported):
        dispatch_surface([P("x^2+y^3+z^3", char=2)])
