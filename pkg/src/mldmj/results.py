"""Result and certificate records returned by every mld route."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

MINUS_INF = -math.inf


def is_minus_inf(v) -> bool:
    return v == MINUS_INF


def value_to_json(v):
    return "-inf" if is_minus_inf(v) else int(v)


def value_from_json(v):
    return MINUS_INF if v == "-inf" else int(v)


@dataclass(frozen=True)
class ToricCovector:
    """Toric divisor E_p: ``kE = <p,1> - 1`` and ``val = <p, Gamma>``."""

    p: tuple
    kE: int
    val: int
    kind: str = field(default="toric", init=False)

    @property
    def log_discrepancy(self) -> int:
        return self.kE + 1 - self.val

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": list(self.p), "kE": self.kE, "val": self.val}


@dataclass(frozen=True)
class JetLevel:
    """The jet level ``m`` whose ``s_m`` realises the reported value."""

    level: int
    s: int
    kind: str = field(default="jet", init=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "level": self.level, "s": self.s}


@dataclass(frozen=True)
class ClassLabel:
    """A classification label; ``p`` is the computing toric divisor when one is named."""

    name: str
    locus: str = ""
    p: Optional[tuple] = None
    kE: Optional[int] = None
    val: Optional[int] = None
    provenance: str = "classification"
    kind: str = field(default="class", init=False)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "class": self.name, "locus": self.locus,
             "provenance": self.provenance}
        if self.p is not None:
            d.update(p=list(self.p), kE=self.kE, val=self.val)
        return d


@dataclass(frozen=True)
class BlowupChain:
    """Exceptional divisor of an explicit blow-up sequence.

    ``val_lower_bound`` marks ``val`` as a lower bound (``val >= ...``).
    ``p`` optionally records a toric covector cross-checking the same verdict.
    """

    description: str
    kE: int
    val: int
    val_lower_bound: bool = False
    p: Optional[tuple] = None
    kind: str = field(default="blowup", init=False)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "description": self.description, "kE": self.kE,
             "val": self.val, "val_lower_bound": self.val_lower_bound}
        if self.p is not None:
            d["p"] = list(self.p)
        return d


Certificate = Union[ToricCovector, JetLevel, ClassLabel, BlowupChain]


@dataclass(frozen=True)
class SmEntry:
    m: int
    s: Optional[int]
    status: str = "computed"   # or "budget-exceeded"

    def to_json(self) -> dict:
        return {"m": self.m, "s": self.s, "status": self.status}


@dataclass(frozen=True)
class MldResult:
    value: Union[int, float]
    certified: bool
    certificate: Optional[Certificate] = None
    nu_upper: Optional[int] = None
    label: Optional[str] = None
    profile: tuple = ()
    note: str = ""

    @property
    def is_minus_inf(self) -> bool:
        return is_minus_inf(self.value)

    def to_json(self) -> dict:
        d = {"mld": value_to_json(self.value), "certified": self.certified,
             "certificate": self.certificate.to_json() if self.certificate else None}
        if self.nu_upper is not None:
            d["nu_upper"] = self.nu_upper
        if self.label is not None:
            d["class"] = self.label
        if self.profile:
            d["s_profile"] = [e.to_json() for e in self.profile]
        if self.note:
            d["note"] = self.note
        return d
