"""Generators, relations and automorphism certificates for the Veech groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .affine import d_mu, d_nu
from .rectangles import cylinders, grid_surface
from .reports import PreconditionError, Report
from .ribbon_graph import eigen_width, grid_graph
from .semiregular import semiregular_surface
from .surface import is_affine_automorphism

I2 = np.eye(2)
ARITHMETIC_PAIRS = frozenset({(2, 3), (2, 4), (2, 6), (3, 3), (4, 4), (6, 6)})


def gen_matrices(m: int, n: int) -> dict:
    if m < 2 or n < 2:
        raise PreconditionError(f"need m, n >= 2, got ({m}, {n})")
    cm, cn = math.cos(math.pi / m), math.cos(math.pi / n)
    sn = math.sin(math.pi / n)
    A = np.array([[-1.0, -2 * cm], [0.0, 1.0]])
    B = np.array([[-1.0, 2 * cn], [0.0, 1.0]])
    C = np.array([[0.0, -1.0], [-1.0, 0.0]])
    E = np.array([[-1.0, 0.0], [0.0, 1.0]])
    Y = np.array([[cn, -sn], [-sn, -cn]])
    return {"A": A, "B": B, "C": C, "E": E, "Y_n": Y, "CAC": C @ A @ C, "CBC": C @ B @ C}


def y_matrix(n: int) -> np.ndarray:
    return gen_matrices(2, n)["Y_n"]


def _dev(M, N) -> float:
    return float(np.max(np.abs(np.asarray(M) - np.asarray(N))))


def relation_check(m: int, n: int, tol: float = 1e-12, projective: bool = False) -> Report:
    """Defining relations of the generators.

    With ``projective=True`` the two power relations are only required up to
    sign, which is how they hold in PGL(2, R).
    """
    g = gen_matrices(m, n)
    A, B, C, E = g["A"], g["B"], g["C"], g["E"]
    r = Report(f"relations for (m,n)=({m},{n})")
    for name in ("A", "B", "C"):
        d = _dev(g[name] @ g[name], I2)
        r.record(f"{name}^2 = I", d < tol, d)
    for label, M, k in (("AC", A @ C, m), ("BC", B @ C, n)):
        P = np.linalg.matrix_power(M, k)
        d = min(_dev(P, -I2), _dev(P, I2)) if projective else _dev(P, -I2)
        r.record(f"({label})^{k} = {'+-' if projective else '-'}I", d < tol, d)
    AB = A @ B
    tr = float(np.trace(AB))
    r.record("AB has |trace| 2", abs(abs(tr) - 2) < tol, abs(abs(tr) - 2))
    r.record("AB is not +-I", min(_dev(AB, I2), _dev(AB, -I2)) > 1e-6)
    if m == n:
        d = _dev(E @ E, I2)
        r.record("E^2 = I", d < tol, d)
        d = _dev(E @ A @ E, B)
        r.record("EAE = B", d < tol, d)
        d = _dev((E @ C) @ (E @ C), -I2)
        r.record("(EC)^2 = -I", d < tol, d)
    return r


@dataclass(frozen=True)
class GeneratorSet:
    case: str
    matrices: dict

    @property
    def names(self) -> tuple:
        return tuple(self.matrices)


def veech_generator_set(m: int, n: int) -> GeneratorSet:
    if m < 2 or n < 2 or m * n < 6:
        raise PreconditionError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")
    g = gen_matrices(m, n)
    both_even = m % 2 == 0 and n % 2 == 0
    if m != n:
        case, names = ("m!=n, both even", ("A", "B", "CAC", "CBC")) if both_even else \
            ("m!=n, not both even", ("A", "B", "C"))
    elif m % 2:
        case, names = "m=n odd", ("A", "C", "E")
    else:
        case, names = "m=n even", ("A", "E", "CAC")
    return GeneratorSet(case, {k: g[k] for k in names})


def conjugation_route(m: int, n: int, name: str):
    """Where the generator is certified: (surface label, surface, conjugated matrix).

    ``A`` and ``CAC`` are carried to ``Y_{n,m}`` by ``D(nu)``; ``B``, ``C``
    and ``CBC`` to ``Y_{m,n}`` by ``D(mu)``.  ``E`` is tested on the rectangle
    surface itself, which it maps rectangle to rectangle when ``m = n``.
    """
    g = gen_matrices(m, n)[name]
    if name == "E":
        return f"X_{{{m},{n}}}", grid_surface(m, n), g
    if name in ("A", "CAC"):
        D = d_nu(m)
        return f"Y_{{{n},{m}}}", semiregular_surface(n, m), D @ g @ np.linalg.inv(D)
    D = d_mu(n)
    return f"Y_{{{m},{n}}}", semiregular_surface(m, n), D @ g @ np.linalg.inv(D)


def verify_generators(m: int, n: int, tol: float | None = None) -> Report:
    gens = veech_generator_set(m, n)
    r = Report(f"Veech generators for (m,n)=({m},{n}), case {gens.case}")
    for name in gens.names:
        label, surface, h = conjugation_route(m, n, name)
        ok = is_affine_automorphism(surface, h, tol)
        inv_ok = is_affine_automorphism(surface, np.linalg.inv(h), tol)
        r.record(f"{name} via {label}", ok)
        r.record(f"{name}^-1 via {label}", inv_ok)
    r.merge(orthogonal_check(m, n, tol))
    if m % 2 == 0 and n % 2 == 0:
        g, w = grid_graph(m, n).graph, eigen_width(m, n)
        nh, nv = len(cylinders(g, w, "horizontal")), len(cylinders(g, w, "vertical"))
        r.record(f"horizontal/vertical cylinder counts {nh}/{nv} differ by one", abs(nh - nv) == 1)
    r.notes.append("containment only; equality of groups is not checked")
    return r


def orthogonal_check(m: int, n: int, tol: float | None = None) -> Report:
    """Reflections of ``Y_{m,n}``: E and Y_n E Y_n always, Y_n unless m, n both even."""
    y = semiregular_surface(m, n)
    Y, E = y_matrix(n), gen_matrices(m, n)["E"]
    r = Report(f"orthogonal group of Y_{{{m},{n}}}")
    r.record("E on Y", is_affine_automorphism(y, E, tol))
    r.record("Y_n E Y_n on Y", is_affine_automorphism(y, Y @ E @ Y, tol))
    r.record("-I on Y", is_affine_automorphism(y, -I2, tol))
    both_even = m % 2 == 0 and n % 2 == 0
    has_y = is_affine_automorphism(y, Y, tol)
    expect = not both_even
    r.record(f"Y_n on Y is {'an' if expect else 'not an'} automorphism", has_y == expect)
    return r


def is_arithmetic(m: int, n: int) -> bool:
    if m < 2 or n < 2 or m * n < 6:
        raise PreconditionError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")
    return (min(m, n), max(m, n)) in ARITHMETIC_PAIRS


def orbifold_euler(cone_orders) -> Fraction:
    """Euler number of a sphere orbifold; ``math.inf`` or ``None`` marks a puncture."""
    total = Fraction(2)
    for k in cone_orders:
        inv = Fraction(0) if k is None or k == math.inf else Fraction(1, int(k))
        total += inv - 1
    return total
