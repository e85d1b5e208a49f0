"""Semiregular polygons and the surfaces glued from them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .surface import (
    SurfaceError,
    TranslationSurface,
    canonicalize,
    centroid,
    check,
    quotient_by_involution,
)


@dataclass(frozen=True)
class SemiregularPolygon:
    """The 2n-gon whose edge ``i`` has direction ``i pi/n`` and length ``a`` or ``b``."""

    n: int
    a: float
    b: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.a < 0 or self.b < 0 or self.a + self.b <= 0:
            raise ValueError("need a, b >= 0, not both zero")

    def edge_vectors(self) -> np.ndarray:
        i = np.arange(2 * self.n)
        lengths = np.where(i % 2 == 0, self.a, self.b)
        ang = i * math.pi / self.n
        return lengths[:, None] * np.column_stack([np.cos(ang), np.sin(ang)])

    def vertices(self) -> np.ndarray:
        vecs = self.edge_vectors()
        return np.vstack([np.zeros(2), np.cumsum(vecs, axis=0)[:-1]])

    def closure_residual(self) -> float:
        return float(np.max(np.abs(self.edge_vectors().sum(axis=0))))


def semiregular_polygon(n: int, a: float, b: float) -> SemiregularPolygon:
    return SemiregularPolygon(n, float(a), float(b))


def p_k(m: int, n: int, k: int) -> SemiregularPolygon:
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in [0, {m - 1}], got {k}")
    lo = math.sin(k * math.pi / m)
    hi = math.sin((k + 1) * math.pi / m)
    if n % 2 == 0 and k % 2 == 0:
        return SemiregularPolygon(n, lo, hi)
    return SemiregularPolygon(n, hi, lo)


def _check_params(m: int, n: int) -> None:
    if m < 2 or n < 2 or m * n < 6:
        raise ValueError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")


def raw_gluing(m: int, n: int) -> dict:
    """Pairing on the uncanonicalized 2n-gons ``P(0..m-1)``.

    Only partners that exist are glued; the edges left over have length zero.
    """
    pairing = {}
    for k in range(1, m, 2):
        for i in range(2 * n):
            other = k + 1 if i % 2 == 0 else k - 1
            if 0 <= other < m:
                j = (i + n) % (2 * n)
                pairing[(k, i)] = (other, j)
                pairing[(other, j)] = (k, i)
    return pairing


def semiregular_polygons(m: int, n: int) -> list:
    """Raw vertex loops of ``P(0..m-1)`` placed left to right."""
    out = []
    x = 0.0
    for k in range(m):
        verts = p_k(m, n, k).vertices()
        verts = verts - [verts[:, 0].min() - x, 0.0]
        x = verts[:, 0].max() + 0.25
        out.append(verts)
    return out


def semiregular_surface_with_map(m: int, n: int, tol: float | None = None):
    _check_params(m, n)
    labels = [f"P({k})" for k in range(m)]
    surface, renum = canonicalize(semiregular_polygons(m, n), raw_gluing(m, n), labels, tol)
    return check(surface, tol), renum


def semiregular_surface(m: int, n: int, tol: float | None = None) -> TranslationSurface:
    return semiregular_surface_with_map(m, n, tol)[0]


def swap_involution(m: int, n: int, renum: dict) -> dict:
    """Polygon map ``P(k) <-> P(m-1-k)`` on the canonicalized surface."""
    sigma = {}
    for k, p in renum.items():
        if p is None:
            continue
        q = renum[m - 1 - k]
        if q is None:
            raise SurfaceError(f"P({m - 1 - k}) was collapsed but P({k}) survived")
        sigma[p] = q
    return sigma


def semiregular_quotient(m: int, n: int, tol: float | None = None) -> TranslationSurface:
    if m % 2 or n % 2:
        raise ValueError(f"quotient needs m and n even, got ({m}, {n})")
    surface, renum = semiregular_surface_with_map(m, n, tol)
    return quotient_by_involution(surface, swap_involution(m, n, renum), tol)


def even_radius(n: int, a: float, b: float) -> float:
    """Distance from the center of ``P_n(a, b)`` to its even edges."""
    return (b + a * math.cos(math.pi / n)) / (2 * math.sin(math.pi / n))


def odd_radius(n: int, a: float, b: float) -> float:
    return even_radius(n, b, a)


def center_constant(m: int, n: int) -> float:
    return (math.cos(math.pi / m) + math.cos(math.pi / n)) / math.sin(math.pi / n)


def center_distance(m: int, n: int, k: int) -> float:
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in [1, {m - 1}], got {k}")
    return center_constant(m, n) * math.sin(k * math.pi / m)


def edge_midpoint_distances(poly: SemiregularPolygon) -> tuple:
    """Measured (even, odd) distances from the vertex mean to edge midpoints.

    Zero-length edges are skipped; the vertex mean is taken over the
    canonical (deduplicated) loop.
    """
    verts = poly.vertices()
    vecs = poly.edge_vectors()
    keep = np.hypot(vecs[:, 0], vecs[:, 1]) > 1e-12
    c = centroid(verts[keep])
    mids = verts + vecs / 2
    dist = np.hypot(*(mids - c).T)
    even = dist[(np.arange(len(vecs)) % 2 == 0) & keep]
    odd = dist[(np.arange(len(vecs)) % 2 == 1) & keep]
    return (float(even.mean()) if len(even) else math.nan,
            float(odd.mean()) if len(odd) else math.nan)


def glued_centroid_distance(s: TranslationSurface, p: int, e: int) -> float:
    """Distance between the centroid of ``p`` and that of its neighbour across edge ``e``.

    The neighbour is developed next to ``p`` so that the glued edges coincide.
    For a self-glued pair this is the length of the gluing translation.
    """
    q, f = s.pairing[(p, e)]
    shift = s.polygons[p][e] - s.polygons[q][(f + 1) % s.num_edges(q)]
    return float(np.hypot(*(centroid(s.polygons[p]) - centroid(s.polygons[q]) - shift)))


def adjacent_centroid_distance(s: TranslationSurface, p: int, q: int) -> float:
    """Centroid distance across the first edge of ``p`` glued to ``q``."""
    for e in range(s.num_edges(p)):
        if s.pairing[(p, e)][0] == q:
            return glued_centroid_distance(s, p, e)
    raise SurfaceError(f"polygons {p} and {q} share no edge")
