"""Trace-field predicates for (m, n, inf) triangle groups.

Everything reduces to integer congruences and Euler's totient.  Fields are
described by generator lists only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reports import PreconditionError


def euler_phi(k: int) -> int:
    if k < 1:
        raise ValueError("totient needs k >= 1")
    out, rest, p = k, k, 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            out -= out // p
        p += 1
    if rest > 1:
        out -= out // rest
    return out


@dataclass(frozen=True)
class TriangleParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise PreconditionError(f"need m, n >= 2, got ({self.m}, {self.n})")
        if self.m > self.n:
            m, n = self.n, self.m
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "n", n)

    @property
    def gamma(self) -> int:
        return math.gcd(self.m, self.n)

    @property
    def x(self) -> int:
        return self.m * self.n // self.gamma

    @property
    def both_even(self) -> bool:
        return self.m % 2 == 0 and self.n % 2 == 0

    @property
    def in_congruence_range(self) -> bool:
        """Strictly ``m < n`` with ``n > 2``; equal parameters are outside it."""
        return self.m < self.n and self.n > 2


def excluded_triangle_group(m: int, n: int) -> bool:
    t = TriangleParams(m, n)
    if not t.both_even:
        return False
    return t.gamma == 2 or ((t.m // t.gamma) % 2 == 1 and (t.n // t.gamma) % 2 == 1)


def fields_equal(m: int, n: int) -> bool:
    """Whether the invariant trace field equals the trace field.

    ``m = 2`` uses the totient ratio, an odd parameter forces equality, and
    the both-even case uses the congruence on ``m - n``.  For ``m = n`` the
    same formulas are applied; see ``TriangleParams.in_congruence_range``.
    """
    t = TriangleParams(m, n)
    if t.n < 3:
        raise PreconditionError("need n >= 3")
    if t.m == 2:
        return euler_phi(2 * t.n) // euler_phi(t.n) == 1
    if not t.both_even:
        return True
    return not any((t.m - t.n + eps) % (2 * t.gamma) == 0 for eps in (-2, 0, 2))


def galois_witness(m: int, n: int):
    """Smallest unit ``k`` mod ``2x`` sending both ``cos(pi/m)`` and ``cos(pi/n)`` to their negatives.

    Exhaustive over ``1 <= k < 2x`` with ``gcd(k, 2x) = 1``; returns ``None``
    when no such ``k`` exists.
    """
    t = TriangleParams(m, n)
    if not t.both_even:
        raise PreconditionError(f"witness search needs m and n even, got ({m}, {n})")
    mod = 2 * t.x
    for k in range(1, mod):
        if math.gcd(k, mod) != 1:
            continue
        if (k - t.m - 1) % (2 * t.m) and (k - t.m + 1) % (2 * t.m):
            continue
        if (k - t.n - 1) % (2 * t.n) and (k - t.n + 1) % (2 * t.n):
            continue
        return k
    return None


def witness_residual(m: int, n: int, k: int) -> float:
    """Largest deviation of ``cos(k pi/m) = -cos(pi/m)`` and its ``n`` analogue."""
    return max(abs(math.cos(k * math.pi / m) + math.cos(math.pi / m)),
               abs(math.cos(k * math.pi / n) + math.cos(math.pi / n)))


def triangle_matrices(m: int, n: int) -> tuple:
    X = np.array([[0.0, -1.0], [1.0, 2 * math.cos(math.pi / m)]])
    Y = np.array([[-2 * math.cos(math.pi / n), 1.0], [-1.0, 0.0]])
    return X, Y


@dataclass(frozen=True)
class FieldDescriptor:
    m: int
    n: int
    trace_field: dict
    invariant_trace_field: dict
    X: np.ndarray
    Y: np.ndarray
    x_power: np.ndarray
    y_power: np.ndarray
    xy_trace: float
    in_congruence_range: bool


def trace_field_generators(m: int, n: int) -> FieldDescriptor:
    t = TriangleParams(m, n)
    cm, cn = math.cos(math.pi / t.m), math.cos(math.pi / t.n)
    if t.m == 2:
        trace = {"cos(pi/n)": cn}
        inv = {"cos(2pi/n)": math.cos(2 * math.pi / t.n)}
    else:
        trace = {"cos(pi/m)": cm, "cos(pi/n)": cn}
        inv = {"cos(2pi/m)": math.cos(2 * math.pi / t.m),
               "cos(2pi/n)": math.cos(2 * math.pi / t.n),
               "cos(pi/m)cos(pi/n)": cm * cn}
    X, Y = triangle_matrices(t.m, t.n)
    return FieldDescriptor(t.m, t.n, trace, inv, X, Y,
                           np.linalg.matrix_power(X, t.m), np.linalg.matrix_power(Y, t.n),
                           float(np.trace(X @ Y)), t.in_congruence_range)
