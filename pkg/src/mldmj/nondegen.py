"""Non-degeneracy of a polynomial with respect to the faces of its Newton polygon."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import ZeroPolynomial
from .groebner import DEFAULT_BUDGET, torus_has_zero
from .newton import Face, faces, face_restriction, polygon_from_support
from .ring import Poly, derivative

MODES = ("all-faces", "compact-faces")


@dataclass(frozen=True)
class NondegVerdict:
    nondegenerate: bool
    mode: str
    face: Optional[Face] = None
    witness: Optional[tuple] = None    # a torus point where every partial of f_gamma vanishes
    faces_checked: int = 0

    def __bool__(self):
        return self.nondegenerate

    def to_json(self) -> dict:
        d = {"nondegenerate": self.nondegenerate, "mode": self.mode,
             "faces_checked": self.faces_checked}
        if self.face is not None:
            d["face"] = {"covector": list(self.face.covector),
                         "vertices": [list(v) for v in self.face.vertices],
                         "compact": self.face.compact}
        if self.witness is not None:
            d["witness"] = [str(a) for a in self.witness]
        return d


def _trivially_nonvanishing(polys) -> bool:
    # a nonzero monomial never vanishes on the torus
    return any(len(p.terms) == 1 for p in polys)


def _cheap_witness(polys, n: int, char: int):
    values = (1, -1, 2) if char != 2 else (1,)
    for pt in itertools.product(values, repeat=n):
        pt = tuple(a % char for a in pt) if char else pt
        if all(a for a in pt) and all(p.evaluate(pt) == 0 for p in polys):
            return pt
    return None


def face_has_torus_zero(f_gamma: Poly, budget: int = DEFAULT_BUDGET) -> bool:
    partials = [derivative(f_gamma, i) for i in range(f_gamma.nvars)]
    partials = [p for p in partials if p.terms]
    if _trivially_nonvanishing(partials):
        return False
    if not partials:
        return True
    return torus_has_zero(partials, budget=budget)


def is_nondegenerate(f: Poly, mode: str = "all-faces",
                     budget: int = DEFAULT_BUDGET) -> NondegVerdict:
    """Check that for each face the partials of ``f_gamma`` have no common torus zero.

    Faces of every dimension are tested, the whole polygon included in
    ``all-faces`` mode.  The lexicographically first failing face is reported.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not f.terms:
        raise ZeroPolynomial("non-degeneracy of the zero polynomial")
    P = polygon_from_support(f)
    scope = faces(P, compact_only=(mode == "compact-faces"))
    scope = sorted(scope, key=lambda F: (F.vertices, F.recession))
    for k, F in enumerate(scope, 1):
        fg = face_restriction(f, F)
        if face_has_torus_zero(fg, budget):
            partials = [derivative(fg, i) for i in range(f.nvars)]
            witness = _cheap_witness(partials, f.nvars, f.char)
            return NondegVerdict(False, mode, F, witness, k)
    return NondegVerdict(True, mode, None, None, len(scope))
