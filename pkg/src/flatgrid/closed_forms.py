"""Closed-form stratum values used to cross-check the geometric computation."""

from __future__ import annotations

from math import gcd
from typing import NamedTuple


class StratumFormula(NamedTuple):
    genus: int
    zeros: int
    zero_order: int


def _nonneg(genus: int, count: int, order: int) -> StratumFormula:
    # Order-0 "zeros" are regular points: report them as no zeros at all.
    return StratumFormula(genus, count, order) if order > 0 else StratumFormula(genus, 0, 0)


def grid_stratum(m: int, n: int) -> StratumFormula:
    g = gcd(m, n)
    genus = (m * n - m - n - g) // 2 + 1
    return _nonneg(genus, g, (m * n - m - n) // g - 1)


def quotient_stratum(m: int, n: int) -> StratumFormula:
    if m % 2 or n % 2:
        raise ValueError("quotient needs m and n even")
    g = gcd(m, n)
    if m <= 4 and n <= 4:
        return StratumFormula(1, 0, 0)
    if (m // g) % 2 and (n // g) % 2:
        return _nonneg((m * n - m - n - 2 * g) // 4 + 1, g, (m * n - m - n) // (2 * g) - 1)
    return _nonneg((m * n - m - n - g) // 4 + 1, g // 2, (m * n - m - n) // g - 1)
