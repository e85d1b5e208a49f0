"""Bipartite ribbon graphs, grid graphs and their Perron-Frobenius widths.

Nodes of grid graphs are lattice points ``(i, j)``.  An edge is stored as the
ordered pair ``(a, b)`` of its endpoints with ``a`` in class A and ``b`` in
class B, so every permutation below can be read off from coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Mapping

import numpy as np

from ._tol import default_tol

Node = Hashable
Edge = tuple  # (a_node, b_node)
WidthFunction = Mapping[Node, float]

# Rotational order of lattice directions starting from +x, counterclockwise.
_DIRECTIONS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class GraphError(ValueError):
    """Raised for malformed ribbon-graph data or invalid parameters."""


class NotAnEigenfunction(ValueError):
    """Raised when a width function fails the eigenvalue equation."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _freeze(mapping):
    return MappingProxyType(dict(mapping))


def cycles(perm: Mapping) -> list[list]:
    """Cycle decomposition of a permutation given as a mapping."""
    seen = set()
    out = []
    for start in sorted(perm, key=repr):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append(cyc)
    return out


def invert(perm: Mapping) -> dict:
    return {v: k for k, v in perm.items()}


@dataclass(frozen=True)
class BipartiteRibbonGraph:
    """A connected bipartite graph with an edge permutation around each class.

    Cycles of ``east`` are the edge stars of the A nodes and cycles of
    ``north`` are the edge stars of the B nodes.
    """

    a_nodes: frozenset
    b_nodes: frozenset
    edges: tuple
    east: Mapping = field(repr=False)
    north: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a_nodes", frozenset(self.a_nodes))
        object.__setattr__(self, "b_nodes", frozenset(self.b_nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "east", _freeze(self.east))
        object.__setattr__(self, "north", _freeze(self.north))
        self._check()

    def _check(self):
        if self.a_nodes & self.b_nodes:
            raise GraphError("node classes A and B overlap")
        edge_set = set(self.edges)
        if len(edge_set) != len(self.edges):
            raise GraphError("duplicate edge ids")
        if not self.edges:
            raise GraphError("graph has no edges")
        for a, b in self.edges:
            if a not in self.a_nodes or b not in self.b_nodes:
                raise GraphError(f"edge {(a, b)!r} does not join A to B")
        for name, perm, end in (("east", self.east, 0), ("north", self.north, 1)):
            if set(perm) != edge_set or set(perm.values()) != edge_set:
                raise GraphError(f"{name} is not a permutation of the edge set")
            seen_nodes = set()
            for cyc in cycles(perm):
                ends = {e[end] for e in cyc}
                if len(ends) != 1:
                    raise GraphError(f"a cycle of {name} spans several nodes: {cyc!r}")
                node = ends.pop()
                if node in seen_nodes:
                    raise GraphError(f"node {node!r} carries two {name} cycles")
                seen_nodes.add(node)
                if len(cyc) != sum(1 for e in self.edges if e[end] == node):
                    raise GraphError(f"{name} cycle at {node!r} misses incident edges")
        isolated = (self.a_nodes | self.b_nodes) - {e[0] for e in self.edges} - {
            e[1] for e in self.edges
        }
        if isolated:
            raise GraphError(f"isolated nodes: {sorted(isolated, key=repr)!r}")
        if not self._connected():
            raise GraphError("graph is not connected")

    def _connected(self) -> bool:
        adj = self.adjacency_lists()
        start = next(iter(adj))
        stack, seen = [start], {start}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(adj)

    @staticmethod
    def alpha(e: Edge) -> Node:
        return e[0]

    @staticmethod
    def beta(e: Edge) -> Node:
        return e[1]

    @property
    def nodes(self) -> list:
        return sorted(self.a_nodes | self.b_nodes, key=repr)

    def adjacency_lists(self) -> dict:
        adj = {v: [] for v in self.nodes}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def adjacency_matrix(self) -> tuple[list, np.ndarray]:
        nodes = self.nodes
        index = {v: i for i, v in enumerate(nodes)}
        mat = np.zeros((len(nodes), len(nodes)))
        for a, b in self.edges:
            mat[index[a], index[b]] += 1.0
            mat[index[b], index[a]] += 1.0
        return nodes, mat

    def degree(self, node: Node) -> int:
        return sum(1 for e in self.edges if node in e)


@dataclass(frozen=True)
class GridGraph:
    """The ``(m, n)`` grid graph with the alternating ribbon structure."""

    m: int
    n: int
    graph: BipartiteRibbonGraph

    @property
    def coords(self) -> dict:
        return {v: v for v in self.graph.nodes}


@dataclass(frozen=True)
class AugmentedGridGraph:
    """Grid graph with the boundary ring of degenerate nodes attached.

    ``kind`` maps each edge to ``"regular"``, ``"A"`` (A-degenerate), ``"B"``
    (B-degenerate) or ``"complete"`` (both endpoints degenerate).
    """

    grid: GridGraph
    graph: BipartiteRibbonGraph
    degenerate_nodes: frozenset
    kind: Mapping = field(repr=False)

    def edges_of_kind(self, kind: str) -> list:
        return [e for e in self.graph.edges if self.kind[e] == kind]


def node_class(i: int, j: int) -> str:
    return "A" if (i + j) % 2 == 0 else "B"


def _lattice_ribbon_graph(nodes) -> BipartiteRibbonGraph:
    node_set = set(nodes)
    a_nodes = {v for v in node_set if node_class(*v) == "A"}
    b_nodes = node_set - a_nodes
    edges = []
    for a in sorted(a_nodes):
        for dx, dy in _DIRECTIONS:
            b = (a[0] + dx, a[1] + dy)
            if b in node_set:
                edges.append((a, b))
    edges.sort()

    def rotation(v):
        # Clockwise around v_{i,j} for even i, counterclockwise for odd i.
        dirs = _DIRECTIONS if v[0] % 2 == 1 else (_DIRECTIONS[0],) + _DIRECTIONS[:0:-1]
        out = []
        for dx, dy in dirs:
            u = (v[0] + dx, v[1] + dy)
            if u in node_set:
                out.append((v, u) if v in a_nodes else (u, v))
        return out

    east, north = {}, {}
    for v in node_set:
        star = rotation(v)
        perm = east if v in a_nodes else north
        for k, e in enumerate(star):
            perm[e] = star[(k + 1) % len(star)]
    return BipartiteRibbonGraph(a_nodes, b_nodes, edges, east, north)


def _check_params(m: int, n: int) -> None:
    if int(m) != m or int(n) != n:
        raise GraphError("m and n must be integers")
    if m < 2 or n < 2 or m * n < 6:
        raise GraphError(f"grid graph needs m, n >= 2 and mn >= 6, got ({m}, {n})")


def grid_graph(m: int, n: int) -> GridGraph:
    _check_params(m, n)
    nodes = [(i, j) for i in range(1, m) for j in range(1, n)]
    return GridGraph(m, n, _lattice_ribbon_graph(nodes))


def augment(g: GridGraph) -> AugmentedGridGraph:
    m, n = g.m, g.n
    nodes = [(i, j) for i in range(m + 1) for j in range(n + 1)]
    graph = _lattice_ribbon_graph(nodes)
    degenerate = frozenset(v for v in nodes if v[0] in (0, m) or v[1] in (0, n))
    kind = {}
    for a, b in graph.edges:
        da, db = a in degenerate, b in degenerate
        kind[(a, b)] = {(False, False): "regular", (True, False): "A",
                        (False, True): "B", (True, True): "complete"}[(da, db)]
    return AugmentedGridGraph(g, graph, degenerate, _freeze(kind))


def eigen_width(m: int, n: int, *, augmented: bool = False) -> dict:
    """Closed-form positive eigenfunction ``sin(i pi/m) sin(j pi/n)``.

    With ``augmented=True`` the width is extended by exact zeros to the
    boundary nodes of the augmented lattice.
    """
    _check_params(m, n)
    if augmented:
        rng_i, rng_j = range(m + 1), range(n + 1)
    else:
        rng_i, rng_j = range(1, m), range(1, n)
    w = {}
    for i in rng_i:
        for j in rng_j:
            if i in (0, m) or j in (0, n):
                w[(i, j)] = 0.0
            else:
                w[(i, j)] = math.sin(i * math.pi / m) * math.sin(j * math.pi / n)
    return w


def grid_eigenvalue(m: int, n: int) -> float:
    return 2 * math.cos(math.pi / m) + 2 * math.cos(math.pi / n)


@dataclass(frozen=True)
class EigenCheck:
    eigenvalue: float
    residual: float


def check_eigen(g: BipartiteRibbonGraph, w: WidthFunction, tol: float | None = None) -> EigenCheck:
    """Recover the eigenvalue of ``w`` and its residual.

    The residual is measured after scaling ``w`` to maximum 1.
    """
    tol = default_tol() if tol is None else tol
    nodes, mat = g.adjacency_matrix()
    vec = np.array([w[v] for v in nodes], dtype=float)
    if np.any(vec <= 0):
        raise GraphError("width function must be strictly positive")
    vec = vec / vec.max()
    image = mat @ vec
    lam = float(vec @ image / (vec @ vec))
    residual = float(np.max(np.abs(image - lam * vec)))
    if residual > tol:
        raise NotAnEigenfunction(f"eigen residual {residual:.3e} exceeds {tol:.1e}", residual)
    return EigenCheck(lam, residual)


def power_iteration(g: BipartiteRibbonGraph, tol: float = 1e-14, max_iter: int = 200_000):
    """Perron-Frobenius eigenpair of the adjacency matrix.

    Iterates with ``A + I`` since the spectrum of a bipartite graph is
    symmetric and ``A`` alone does not converge.  The returned width has
    maximum value 1.
    """
    nodes, mat = g.adjacency_matrix()
    shifted = mat + np.eye(len(nodes))
    vec = np.ones(len(nodes))
    lam = 0.0
    for _ in range(max_iter):
        nxt = shifted @ vec
        nxt /= nxt.max()
        image = mat @ nxt
        lam = float(nxt @ image / (nxt @ nxt))
        if np.max(np.abs(image - lam * nxt)) < tol and np.max(np.abs(nxt - vec)) < tol:
            vec = nxt
            break
        vec = nxt
    else:
        raise RuntimeError(f"power iteration did not converge in {max_iter} steps")
    return lam, {v: float(x) for v, x in zip(nodes, vec)}


def act_C(g: BipartiteRibbonGraph, w: WidthFunction):
    """Graph data of ``C(S)``: classes swapped, ``(east, north) -> (north^-1, east^-1)``."""
    flip = {e: (e[1], e[0]) for e in g.edges}
    north_inv, east_inv = invert(g.north), invert(g.east)
    east = {flip[e]: flip[north_inv[e]] for e in g.edges}
    north = {flip[e]: flip[east_inv[e]] for e in g.edges}
    edges = sorted(flip.values(), key=repr)
    return BipartiteRibbonGraph(g.b_nodes, g.a_nodes, edges, east, north), dict(w)


def act_E(g: BipartiteRibbonGraph, w: WidthFunction):
    """Graph data of ``E(S)``: ``east -> east^-1``."""
    return BipartiteRibbonGraph(g.a_nodes, g.b_nodes, g.edges, invert(g.east), g.north), dict(w)


def relabel(g: BipartiteRibbonGraph, eta: Mapping) -> BipartiteRibbonGraph:
    """Push a ribbon graph forward along a node bijection."""
    def mv(e):
        return (eta[e[0]], eta[e[1]])
    east = {mv(e): mv(f) for e, f in g.east.items()}
    north = {mv(e): mv(f) for e, f in g.north.items()}
    return BipartiteRibbonGraph(
        {eta[v] for v in g.a_nodes}, {eta[v] for v in g.b_nodes},
        sorted((mv(e) for e in g.edges), key=repr), east, north,
    )


def transpose_iso(m: int, n: int) -> dict:
    """Node bijection ``v_{i,j} -> v_{j,i}`` from ``G_{m,n}`` to ``G_{n,m}``."""
    g = grid_graph(m, n)
    return {v: (v[1], v[0]) for v in g.graph.nodes}


def transpose_defects(m: int, n: int) -> dict:
    """Count violations of the transpose conjugation identities.

    Keys: ``classes``, ``east`` (against the inverse east of the target),
    ``north`` and ``width``.  All zero means the identities hold.
    """
    src, dst = grid_graph(m, n).graph, grid_graph(n, m).graph
    eta = transpose_iso(m, n)
    pushed = relabel(src, eta)
    east_inv = invert(dst.east)
    w_src, w_dst = eigen_width(m, n), eigen_width(n, m)
    return {
        "classes": int(pushed.a_nodes != dst.a_nodes) + int(pushed.b_nodes != dst.b_nodes),
        "east": sum(1 for e in dst.edges if pushed.east[e] != east_inv[e]),
        "north": sum(1 for e in dst.edges if pushed.north[e] != dst.north[e]),
        "width": sum(1 for v, x in w_src.items() if abs(x - w_dst[eta[v]]) > 1e-15),
    }


def iota(m: int, n: int) -> dict:
    """Point reflection ``v_{i,j} -> v_{m-i,n-j}`` on the augmented lattice."""
    return {(i, j): (m - i, n - j) for i in range(m + 1) for j in range(n + 1)}


def validate_iota(m: int, n: int) -> bool:
    """Whether the point reflection preserves classes, commutes with both
    permutations and preserves the eigen width."""
    g = grid_graph(m, n).graph
    eta = {v: u for v, u in iota(m, n).items() if v in set(g.nodes)}
    if {eta[v] for v in g.a_nodes} != set(g.a_nodes):
        return False
    if {eta[v] for v in g.b_nodes} != set(g.b_nodes):
        return False
    pushed = relabel(g, eta)
    if any(pushed.east[e] != g.east[e] or pushed.north[e] != g.north[e] for e in g.edges):
        return False
    w = eigen_width(m, n)
    return all(abs(w[v] - w[eta[v]]) < 1e-14 for v in g.nodes)
