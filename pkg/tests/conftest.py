import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mldmj.ring import Poly, Ring

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CHARS = [0, 2, 3, 5, 7]


def polys(nvars=3, max_deg=4, max_terms=5, chars=(0, 3, 5), min_deg=0):
    """Hypothesis strategy for small polynomials."""
    names = ["x", "y", "z", "w"][:nvars]

    @st.composite
    def build(draw):
        char = draw(st.sampled_from(chars))
        k = draw(st.integers(1, max_terms))
        terms = {}
        for _ in range(k):
            mon = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
            if not (min_deg <= sum(mon) <= max_deg):
                continue
            terms[mon] = terms.get(mon, 0) + draw(st.integers(-4, 4))
        return Poly(terms, names, char)

    return build()


def random_poly(rng: random.Random, R: Ring, max_deg: int, terms: int, min_deg: int = 1):
    f = R.zero()
    for _ in range(terms):
        mon = tuple(rng.randint(0, max_deg) for _ in range(R.nvars))
        if min_deg <= sum(mon) <= max_deg:
            f = f + R.monomial(mon, rng.choice([-2, -1, 1, 2, 3]))
    return f


@pytest.fixture
def xyz():
    return Ring("x,y,z")
