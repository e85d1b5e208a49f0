"""Affine maps between the rectangle model and the semiregular model.

The rectangle surface of the grid graph is cut into polygons ``Q(k)``, one
per column of horizontal edges of the augmented graph.  A single linear map
carries each ``Q(k)`` onto the semiregular polygon ``P(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rectangles import grid_surface
from .reports import PreconditionError, Report
from .ribbon_graph import augment, eigen_width, grid_graph, iota, node_class
from .semiregular import semiregular_surface, semiregular_surface_with_map, p_k, swap_involution
from .surface import apply_matrix, edge_shift, is_translation_equivalent, polygon_area, polygon_matching

E = np.diag([-1.0, 1.0])


def d_mu(n: int) -> np.ndarray:
    """Linear part of the map from the rectangle model onto ``Y_{m,n}``."""
    s = math.sin(math.pi / n)
    return np.array([[1 / s, -math.cos(math.pi / n) / s], [0.0, 1.0]])


def d_mu_reflected(n: int) -> np.ndarray:
    """``d_mu`` composed with the reflection ``diag(1, -1)``; does not carry Q(k) to P(k)."""
    return d_mu(n) @ np.diag([1.0, -1.0])


def d_nu(m: int) -> np.ndarray:
    """Linear part of the map from ``X_{m,n}`` onto ``Y_{n,m}`` through the transpose."""
    return d_mu(m) @ E


def h_k(m: int, n: int, k: int) -> list:
    """Horizontal augmented-graph edges in column ``k``, as (A node, B node)."""
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in [0, {m - 1}], got {k}")
    out = []
    for i in range(1, n):
        u, v = (k, i), (k + 1, i)
        out.append((u, v) if node_class(*u) == "A" else (v, u))
    return out


def _diagonal(w, first, second, classes):
    """Positive diagonal ``(w(B), w(A))`` of the rectangle on edge ``first``-``second``."""
    for node, cls in zip((first, second), classes):
        if node_class(*node) != cls:
            raise AssertionError(f"node {node} is not of class {cls}")
    a, b = (first, second) if classes[0] == "A" else (second, first)
    return np.array([w[b], w[a]], dtype=float)


@dataclass(frozen=True)
class QPolygonData:
    m: int
    n: int
    k: int
    edge_vectors: np.ndarray

    def closure_residual(self) -> float:
        return float(np.max(np.abs(self.edge_vectors.sum(axis=0))))

    def vertices(self) -> np.ndarray:
        return np.vstack([np.zeros(2), np.cumsum(self.edge_vectors, axis=0)[:-1]])

    def area(self) -> float:
        return polygon_area(self.vertices())


def q_polygon(m: int, n: int, k: int, w=None) -> QPolygonData:
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in [0, {m - 1}], got {k}")
    w = eigen_width(m, n, augmented=True) if w is None else w
    vecs = []
    for i in range(2 * n):
        if k % 2 == 1:
            if i < n and i % 2 == 0:
                v = _diagonal(w, (k + 1, i), (k + 1, i + 1), "AB")
            elif i < n:
                v = _diagonal(w, (k, i), (k, i + 1), "AB")
            elif i % 2 == 0:
                v = -_diagonal(w, (k + 1, 2 * n - 1 - i), (k + 1, 2 * n - i), "BA")
            else:
                v = -_diagonal(w, (k, 2 * n - 1 - i), (k, 2 * n - i), "BA")
        else:
            j = i - n
            if j >= 0 and j % 2 == 0:
                v = -_diagonal(w, (k, j), (k, j + 1), "AB")
            elif j >= 0:
                v = -_diagonal(w, (k + 1, j), (k + 1, j + 1), "AB")
            elif j % 2 == 0:
                v = _diagonal(w, (k, -j - 1), (k, -j), "BA")
            else:
                v = _diagonal(w, (k + 1, -j - 1), (k + 1, -j), "BA")
        vecs.append(v)
    return QPolygonData(m, n, k, np.array(vecs))


def _check_mn(m: int, n: int) -> None:
    if m < 2 or n < 2 or m * n < 6:
        raise PreconditionError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")


def map_q_polygons(m: int, n: int, M) -> Report:
    """Compare ``M * Q(k)`` with ``P(k)`` edge by edge."""
    _check_mn(m, n)
    M = np.asarray(M, dtype=float)
    report = Report(f"Q(k) -> P(k) for (m,n)=({m},{n})")
    for k in range(m):
        q = q_polygon(m, n, k)
        report.record(f"Q({k}) closes", q.closure_residual() < 1e-9, q.closure_residual())
        dev = np.abs(q.edge_vectors @ M.T - p_k(m, n, k).edge_vectors())
        worst = int(np.argmax(dev.max(axis=1)))
        label = f"k={k}" if dev.max() < 1e-9 else f"k={k} first bad edge i={worst}"
        report.record(label, dev.max() < 1e-9, dev.max())
    return report


def verify_mu(m: int, n: int, geometric: bool = False, tol: float | None = None) -> Report:
    """Check ``D(mu) Q(k) = P(k)`` for every k, plus area bookkeeping.

    With ``geometric=True`` the rectangle surface is also mapped by ``D(mu)``
    and compared with ``Y_{m,n}`` as translation surfaces.
    """
    M = d_mu(n)
    report = map_q_polygons(m, n, M)
    report.name = f"mu for (m,n)=({m},{n})"
    x = grid_surface(m, n)
    y = semiregular_surface(m, n)
    q_area = sum(q_polygon(m, n, k).area() for k in range(m))
    report.record("sum of Q(k) areas equals area of X", abs(q_area - x.area()) < 1e-9,
                  abs(q_area - x.area()))
    scale = abs(np.linalg.det(M))
    report.record("|det D(mu)| = csc(pi/n)", abs(scale - 1 / math.sin(math.pi / n)) < 1e-12,
                  abs(scale - 1 / math.sin(math.pi / n)))
    report.record("area(Y) = |det D(mu)| area(X)", abs(y.area() - scale * x.area()) < 1e-9,
                  abs(y.area() - scale * x.area()))
    if geometric:
        found = is_translation_equivalent(apply_matrix(x, M), y, tol)
        report.record("D(mu) X is translation equivalent to Y", found is not None)
    return report


def verify_nu(m: int, n: int, geometric: bool = False, tol: float | None = None) -> Report:
    _check_mn(m, n)
    report = Report(f"nu for (m,n)=({m},{n})")
    x, xt = grid_surface(m, n), grid_surface(n, m)
    report.record("E X_{m,n} matches X_{n,m}",
                  polygon_matching(apply_matrix(x, E), xt, tol) is not None)
    report.merge(verify_mu(n, m, geometric, tol), prefix="transposed: ")
    dev = float(np.max(np.abs(d_nu(m) - d_mu(m) @ E)))
    report.record("D(nu) = D(mu') E", dev < 1e-12, dev)
    if geometric:
        found = is_translation_equivalent(apply_matrix(x, d_nu(m)), semiregular_surface(n, m), tol)
        report.record("D(nu) X_{m,n} is translation equivalent to Y_{n,m}", found is not None)
    return report


def verify_iota_conjugacy(m: int, n: int, tol: float | None = None) -> Report:
    if m % 2 or n % 2:
        raise PreconditionError(f"iota needs m and n even, got ({m}, {n})")
    _check_mn(m, n)
    report = Report(f"iota for (m,n)=({m},{n})")
    aug = augment(grid_graph(m, n))
    eta = iota(m, n)
    ids = set(aug.graph.edges)
    for k in range(m):
        image = set()
        for a, b in h_k(m, n, k):
            u, v = eta[a], eta[b]
            image.add((u, v) if (u, v) in ids else (v, u))
        report.record(f"iota(H_{k}) = H_{m - 1 - k}", image == set(h_k(m, n, m - 1 - k)))
    for k in range(m):
        a = q_polygon(m, n, k).edge_vectors
        b = q_polygon(m, n, m - 1 - k).edge_vectors
        shifts = [r for r in range(len(a)) if np.max(np.abs(np.roll(b, -r, axis=0) - a)) < 1e-9]
        report.record(f"Q({k}) is a translate of Q({m - 1 - k})", bool(shifts))
    y, renum = semiregular_surface_with_map(m, n, tol)
    sigma = swap_involution(m, n, renum)
    for p, q in sorted(sigma.items()):
        report.record(f"{y.labels[p]} -> {y.labels[q]} by translation", edge_shift(y, p, q, tol) is not None)
    glue_ok = True
    for (p, e), (q, f) in y.pairing.items():
        rp, rq = edge_shift(y, p, sigma[p], tol), edge_shift(y, q, sigma[q], tol)
        if rp is None or rq is None:
            glue_ok = False
            break
        kp, kq = y.num_edges(p), y.num_edges(q)
        if y.pairing[(sigma[p], (e + rp) % kp)] != (sigma[q], (f + rq) % kq):
            glue_ok = False
            break
    report.record("swap respects the gluing", glue_ok)
    return report
