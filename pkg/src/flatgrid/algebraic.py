"""Algebraic curve models and the Schwarz-Christoffel side-length check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reports import PreconditionError, Report
from .semiregular import adjacent_centroid_distance, semiregular_quotient, center_constant, glued_centroid_distance

UNVERIFIED = "emitted, unverified"


@dataclass(frozen=True)
class Factor:
    """``(u - 2cos(num pi/den))^mult``; ``num = 0`` is the factor ``(u - 2)``."""

    num: int
    den: int
    mult: int = 1

    @property
    def root(self) -> float:
        return 2 * math.cos(self.num * math.pi / self.den)

    def _power(self) -> str:
        return "" if self.mult == 1 else f"^{self.mult}"

    def numeric(self) -> str:
        r = self.root
        if self.num == 0:
            body = "(u-2)"
        elif abs(r) < 1e-12:
            body = "(u)"
        elif r > 0:
            body = f"(u-{r!r})"
        else:
            body = f"(u+{-r!r})"
        return body + self._power()

    def exact(self) -> str:
        body = "(u-2)" if self.num == 0 else f"(u-2cos({self.num}π/{self.den}))"
        return body + self._power()


@dataclass(frozen=True)
class AlgebraicModel:
    m: int
    n: int
    case: str
    y_exponent: int
    factors: tuple
    form_denominator: tuple
    status: str

    def _rhs(self, exact: bool) -> str:
        return " * ".join(f.exact() if exact else f.numeric() for f in self.factors)

    def curve(self, exact: bool = False) -> str:
        return f"y^{self.y_exponent} = {self._rhs(exact)}"

    def form(self, exact: bool = False) -> str:
        den = " * ".join(Factor(f.num, f.den).exact() if exact else Factor(f.num, f.den).numeric()
                         for f in self.form_denominator)
        return f"y du / ({den})"

    def degree(self) -> int:
        return sum(f.mult for f in self.factors)


def algebraic_model(m: int, n: int) -> AlgebraicModel:
    if m < 2 or n < 2 or m * n < 6:
        raise PreconditionError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")
    if m % 2:
        case, expo = "m odd", 2 * n
        roots = [Factor(2 * j, m, 2) for j in range(1, (m - 1) // 2 + 1)]
        lead = Factor(0, m, 1)
        status = UNVERIFIED
    elif n % 2:
        case, expo = "m even, n odd", 2 * n
        roots = [Factor(2 * j - 1, m, 2) for j in range(1, m // 2 + 1)]
        lead = Factor(0, m, n)
        status = UNVERIFIED
    else:
        case, expo = "m, n even (quotient surface)", n
        roots = [Factor(2 * j - 1, m, 1) for j in range(1, m // 2 + 1)]
        lead = Factor(0, m, n // 2)
        status = "side lengths checked by sc_ratio_check"
    factors = tuple(sorted([lead] + roots, key=lambda f: -f.root))
    denominator = tuple(Factor(f.num, f.den) for f in factors)
    return AlgebraicModel(m, n, case, expo, factors, denominator, status)


@dataclass(frozen=True)
class QuadratureResult:
    j: int
    value: float
    error: float


def _gl_nodes(order: int = 20):
    return np.polynomial.legendre.leggauss(order)


def adaptive_gauss(f, lo: float, hi: float, tol: float, max_depth: int = 40, order: int = 20):
    """Adaptive Gauss-Legendre; the error estimate compares a panel with its halves."""
    x, w = _gl_nodes(order)

    def panel(a, b):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return half * float(np.dot(w, f(mid + half * x)))

    total, err = 0.0, 0.0
    stack = [(lo, hi, panel(lo, hi), 0)]
    while stack:
        a, b, whole, depth = stack.pop()
        mid = 0.5 * (a + b)
        left, right = panel(a, mid), panel(mid, b)
        diff = abs(left + right - whole)
        if diff <= tol * (b - a) / (hi - lo) or diff < 1e-15 * abs(left + right):
            total += left + right
            err += diff
        elif depth >= max_depth:
            raise ArithmeticError("quadrature did not reach tolerance within the subdivision cap")
        else:
            stack.append((a, mid, left, depth + 1))
            stack.append((mid, b, right, depth + 1))
    return total, err


def _sc_integrand(m: int, n: int, a: float, b: float, trig):
    """Integrand after substituting ``w = a + t^n`` on the left half and ``w = b - t^n`` on the right.

    Near either endpoint ``|cos(m w)| = sin(m t^n)``; the Jacobian ``n t^(n-1)``
    cancels the singular factor exactly, leaving a smooth function of ``t``.
    """
    expo = 1.0 / n - 1.0

    def g(t):
        u = t ** n
        smooth = (m * np.sinc(m * u / math.pi)) ** expo
        return n * (trig(a + u) + trig(b - u)) * smooth

    return g


def _check_even(m: int, n: int) -> None:
    if m % 2 or n % 2:
        raise PreconditionError(f"side-length check needs m and n even, got ({m}, {n})")


def sc_edge_length(m: int, n: int, j: int, tol: float = 1e-12) -> QuadratureResult:
    """``ell_j`` up to the common constant factor."""
    _check_even(m, n)
    if not 0 <= j <= m // 2 - 1:
        raise PreconditionError(f"j must lie in [0, {m // 2 - 1}], got {j}")
    a = (2 * j - 1) * math.pi / (2 * m)
    b = (2 * j + 1) * math.pi / (2 * m)
    top = (math.pi / (2 * m)) ** (1.0 / n)
    val, err = adaptive_gauss(_sc_integrand(m, n, a, b, np.cos), 0.0, top, tol)
    return QuadratureResult(j, abs(val), err)


def sine_component(m: int, n: int, tol: float = 1e-12) -> float:
    """The odd part of the ``j = 0`` integral, which vanishes by symmetry."""
    _check_even(m, n)
    b = math.pi / (2 * m)
    top = b ** (1.0 / n)
    return adaptive_gauss(_sc_integrand(m, n, -b, b, np.sin), 0.0, top, tol)[0]


def quotient_center_distances(m: int, n: int) -> list:
    """Distance from ``C(m/2-j)`` to ``C(m/2-j-1)`` on the quotient surface, j = 0..m/2-1.

    For ``j = 0`` the neighbour is the mirror copy of ``P(m/2-1)``, reached
    through one of its self-glued edges.
    """
    _check_even(m, n)
    s = semiregular_quotient(m, n)
    ids = {label: p for p, label in enumerate(s.labels)}
    out = []
    for j in range(m // 2):
        k = m // 2 - j
        if j == 0:
            p = ids[f"P({k - 1})"]
            self_glued = [e for e in range(s.num_edges(p)) if s.pairing[(p, e)][0] == p]
            out.append(glued_centroid_distance(s, p, self_glued[0]))
        else:
            out.append(adjacent_centroid_distance(s, ids[f"P({k})"], ids[f"P({k - 1})"]))
    return out


def sc_ratio_check(m: int, n: int, tol: float = 1e-6) -> Report:
    _check_even(m, n)
    r = Report(f"Schwarz-Christoffel side lengths for (m,n)=({m},{n})")
    lengths = [sc_edge_length(m, n, j, tol * 1e-3) for j in range(m // 2)]
    for q in lengths:
        r.record(f"ell_{q.j} > 0", q.value > 0)
    base = lengths[0].value
    for q in lengths[1:]:
        want = math.cos(q.j * math.pi / m)
        dev = abs(q.value / base - want)
        r.record(f"ell_{q.j}/ell_0 = cos({q.j}pi/{m})", dev < tol, dev)
    odd = abs(sine_component(m, n))
    r.record("sine component vanishes", odd < tol, odd)
    dists = quotient_center_distances(m, n)
    kappa = center_constant(m, n)
    for j, d in enumerate(dists):
        dev = abs(d - kappa * math.cos(j * math.pi / m))
        r.record(f"centroid distance {j} = kappa cos({j}pi/{m})", dev < tol, dev)
    ratios = [q.value / d for q, d in zip(lengths, dists)]
    spread = (max(ratios) - min(ratios)) / ratios[0]
    r.record("ell_j / centroid distance is constant", spread < tol, spread)
    r.notes.append(f"constant ell_j/distance = {ratios[0]!r}")
    return r
