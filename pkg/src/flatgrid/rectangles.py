"""Rectangle surfaces from bipartite ribbon graphs and width functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .ribbon_graph import BipartiteRibbonGraph, cycles, eigen_width, grid_graph
from .surface import SurfaceError, TranslationSurface, check, mat2

# Rectangle sides in vertex-loop order.
BOTTOM, RIGHT, TOP, LEFT = 0, 1, 2, 3


@dataclass(frozen=True)
class RectangleChart:
    edge: tuple
    width: float
    height: float


def rectangle_charts(g: BipartiteRibbonGraph, w: Mapping) -> list:
    """One chart per edge: width from the B endpoint, height from the A endpoint."""
    return [RectangleChart(e, float(w[g.beta(e)]), float(w[g.alpha(e)])) for e in g.edges]


def build_surface(g: BipartiteRibbonGraph, w: Mapping, tol: float | None = None) -> TranslationSurface:
    charts = rectangle_charts(g, w)
    index = {c.edge: p for p, c in enumerate(charts)}
    polys = []
    for c in charts:
        if c.width <= 0 or c.height <= 0:
            raise SurfaceError(f"rectangle for edge {c.edge} is degenerate")
        polys.append([(0.0, 0.0), (c.width, 0.0), (c.width, c.height), (0.0, c.height)])
    pairs = []
    for c in charts:
        p = index[c.edge]
        right = charts[index[g.east[c.edge]]]
        up = charts[index[g.north[c.edge]]]
        if abs(right.height - c.height) > 1e-12 or abs(up.width - c.width) > 1e-12:
            raise SurfaceError(f"side length mismatch at edge {c.edge}")
        pairs.append(((p, RIGHT), (index[right.edge], LEFT)))
        pairs.append(((p, TOP), (index[up.edge], BOTTOM)))
    labels = [f"R{c.edge}" for c in charts]
    return check(TranslationSurface.from_pairs(polys, pairs, labels), tol)


def grid_surface(m: int, n: int) -> TranslationSurface:
    """The rectangle surface of the ``(m, n)`` grid graph with its eigen width."""
    return build_surface(grid_graph(m, n).graph, eigen_width(m, n))


@dataclass(frozen=True)
class Cylinder:
    direction: str
    core: tuple
    height: float
    circumference: float
    members: tuple

    @property
    def modulus(self) -> float:
        return self.height / self.circumference


def cylinders(g: BipartiteRibbonGraph, w: Mapping, direction: str = "horizontal") -> list:
    """Horizontal cylinders come from east cycles (A nodes), vertical from north cycles."""
    if direction == "horizontal":
        perm, core, across = g.east, g.alpha, g.beta
    elif direction == "vertical":
        perm, core, across = g.north, g.beta, g.alpha
    else:
        raise ValueError(f"unknown direction {direction!r}")
    out = []
    for cyc in cycles(perm):
        node = core(cyc[0])
        out.append(Cylinder(direction, node, float(w[node]),
                            float(sum(w[across(e)] for e in cyc)), tuple(cyc)))
    return sorted(out, key=lambda c: c.core)


def standard_parabolics(lam: float) -> tuple:
    if not lam > 0:
        raise ValueError("eigenvalue must be positive")
    return mat2(1, lam, 0, 1), mat2(1, 0, -lam, 1)


def surface_area(g: BipartiteRibbonGraph, w: Mapping) -> float:
    return float(np.sum([w[g.alpha(e)] * w[g.beta(e)] for e in g.edges]))
