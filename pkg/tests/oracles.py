"""Independent oracles used only by the tests."""
import itertools

import numpy as np


def box_search(vertices, n, B=25):
    """Minimum of <p,1> - min_v <p,v> over p in {1..B}^n; returns (value, lexmin p)."""
    grid = np.array(list(itertools.product(range(1, B + 1), repeat=n)), dtype=np.int64)
    V = np.array(vertices, dtype=np.int64)
    vals = grid.sum(axis=1) - (grid @ V.T).min(axis=1)
    best = vals.min()
    idx = np.flatnonzero(vals == best)[0]     # product order is lexicographic
    return int(best), tuple(int(a) for a in grid[idx])


def lp_contains_one(vertices, n):
    """Is 1 in conv(vertices) + R^n_{>=0}?  Solved as an LP feasibility problem."""
    from scipy.optimize import linprog
    V = np.array(vertices, dtype=float)
    k = len(V)
    res = linprog(np.zeros(k), A_ub=V.T, b_ub=np.ones(n) + 1e-9,
                  A_eq=np.ones((1, k)), b_eq=[1.0], bounds=[(0, None)] * k, method="highs")
    return res.status == 0
