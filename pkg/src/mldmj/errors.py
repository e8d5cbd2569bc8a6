"""Exception hierarchy shared by every module.

Each exception carries a stable CLI exit code in ``exit_code``.
"""
from __future__ import annotations


class MldError(Exception):
    exit_code = 1


class ParseError(MldError, ValueError):
    exit_code = 2


class CharacteristicUnsupported(MldError):
    exit_code = 6


class ZeroPolynomial(MldError, ValueError):
    exit_code = 2


class DimensionTooLarge(MldError):
    exit_code = 3


class PointNotOnVariety(MldError):
    exit_code = 4


class ResourceLimit(MldError):
    """A Groebner computation exceeded its step budget.

    ``partial`` optionally holds whatever was computed before the budget ran out
    (for instance the jet levels that did finish).
    """

    exit_code = 5

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NormalizationFailed(MldError):
    exit_code = 7


class NonSplitInitialForm(MldError):
    exit_code = 7


class PrecisionInsufficient(MldError):
    exit_code = 7
