"""Formal spectral data and Higgs checks over exact rationals.

Values use the same JSON shapes as the ``higgs`` command line tool; this
module passes them as Python dicts.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from . import _core

HiggsError = _core.HiggsError
HiggsError.kind = property(lambda self: self.args[0])

__all__ = [
    "HiggsError",
    "series",
    "coefficients",
    "polynomial",
    "decompose",
    "check",
    "hitchin",
    "fixture",
    "fixture_names",
    "power_trace",
]


def _rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def series(terms: Mapping[int, object], precision: int) -> dict:
    """Series from {exponent: coefficient}; zero coefficients are dropped."""
    coeffs = [[e, _rational(c)] for e, c in sorted(terms.items()) if Fraction(c) != 0]
    order = coeffs[0][0] if coeffs else precision
    return {"order": order, "precision": precision, "coeffs": coeffs}


def coefficients(s: Mapping) -> dict[int, Fraction]:
    return {e: Fraction(c) for e, c in s["coeffs"]}


def polynomial(a: Iterable[Mapping[int, object]], precision: int) -> dict:
    """p = T^n - a_1 T^(n-1) + ... + (-1)^n a_n from sparse a_i."""
    a = [series(t, precision) for t in a]
    return {"n": len(a), "precision": precision, "a": a}


def decompose(p: Mapping) -> dict:
    return json.loads(_core.decompose(json.dumps(p)))


def check(problem: Mapping, window=None, precision=None, gamma=None) -> dict:
    return json.loads(_core.check(json.dumps(problem), window, precision, gamma))


def hitchin(matrix, trivialize: bool = False) -> dict:
    return json.loads(_core.hitchin(json.dumps(matrix), trivialize))


def fixture(name: str, window=None, precision=None, cutoff=None) -> dict:
    return json.loads(_core.fixture(name, window, precision, cutoff))


def fixture_names() -> list[str]:
    return list(_core.fixture_names())


def power_trace(p: Mapping, k: int) -> dict:
    return json.loads(_core.power_trace(json.dumps(p), k))
