"""Random sampling harness for the bounded-level conjecture.

Dimension 1 compares the curve classifier with jets at level 5.  Dimension 2
samples hypersurfaces non-degenerate on all faces, takes the toric answer and
cross-checks it against the jet levels that are cheap to compute.  A clean
run is evidence, never a proof.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .classify import classify_curve
from .errors import ResourceLimit
from .jets import CURVE_BOUND, SURFACE_BOUND, mld_via_jets, s_profile
from .newton import mld_polygon, polygon_from_support, toric_log_discrepancy
from .nondegen import is_nondegenerate
from .results import MINUS_INF, value_to_json
from .ring import Ring


@dataclass
class ProbeSummary:
    dim: int
    seed: int
    samples: int
    degree: int
    char: int
    tested: int = 0
    skipped: int = 0             # degenerate or budget-exceeded draws
    level_histogram: Counter = field(default_factory=Counter)
    beyond_bound: int = 0        # implied level above the known bound (not a refutation)
    refutations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"dim": self.dim, "seed": self.seed, "samples": self.samples,
                "degree": self.degree, "char": self.char, "tested": self.tested,
                "skipped": self.skipped,
                "level_histogram": {str(k): v for k, v in sorted(self.level_histogram.items())},
                "beyond_bound": self.beyond_bound, "refutations": self.refutations}


def random_poly(rng: random.Random, R: Ring, degree: int, min_degree: int, terms: int):
    n = R.nvars
    f = R.zero()
    while not f.terms:
        for _ in range(terms):
            d = rng.randint(min_degree, degree)
            cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
            exps = [b - a for a, b in zip([0] + cuts, cuts + [d])]
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            f = f + R.monomial(tuple(exps), c)
    return f


def _probe_curves(summary: ProbeSummary, rng: random.Random):
    R = Ring("x,y", summary.char)
    for _ in range(summary.samples):
        f = random_poly(rng, R, summary.degree, 1, rng.randint(1, 4))
        try:
            jets = mld_via_jets([f], 2, 1, None, CURVE_BOUND)
        except ResourceLimit:
            summary.skipped += 1
            continue
        summary.tested += 1
        exact = classify_curve(f)
        summary.level_histogram[jets.certificate.level] += 1
        if jets.value != exact.value:
            summary.refutations.append({"poly": str(f), "jets": value_to_json(jets.value),
                                        "classifier": value_to_json(exact.value)})


def _probe_surfaces(summary: ProbeSummary, rng: random.Random, cheap_levels: int = 2):
    R = Ring("x,y,z", summary.char)
    draws = 0
    while summary.tested < summary.samples and draws < 20 * summary.samples:
        draws += 1
        f = random_poly(rng, R, summary.degree, 2, rng.randint(2, 4))
        try:
            if not is_nondegenerate(f, "all-faces"):
                summary.skipped += 1
                continue
            profile = s_profile([f], 3, 2, None, range(cheap_levels + 1))
        except ResourceLimit:
            summary.skipped += 1
            continue
        summary.tested += 1
        P = polygon_from_support(f)
        r = mld_polygon(P)
        cert = r.certificate
        ld = toric_log_discrepancy(P, cert.p)
        level = cert.val - 1
        summary.level_histogram[level] += 1
        if level > SURFACE_BOUND:
            summary.beyond_bound += 1
        problems = []
        if (r.value == MINUS_INF and ld >= 0) or (r.value != MINUS_INF and ld != r.value):
            problems.append("certificate does not validate")
        for e in profile:
            if e.status != "computed":
                continue
            if r.value != MINUS_INF and e.s < r.value:
                problems.append(f"s_{e.m} = {e.s} below the toric value")
        if problems:
            summary.refutations.append({"poly": str(f), "mld": value_to_json(r.value),
                                        "problems": problems})


def probe(dim: int, samples: int = 100, degree: int = 6, char: int = 0,
          seed: int = 0) -> ProbeSummary:
    if dim not in (1, 2):
        raise ValueError("probe supports dimension 1 or 2")
    rng = random.Random(seed)
    summary = ProbeSummary(dim, seed, samples, degree, char)
    if dim == 1:
        _probe_curves(summary, rng)
    else:
        _probe_surfaces(summary, rng)
    return summary
