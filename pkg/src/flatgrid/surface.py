"""Polygonal translation surfaces.

A surface is a list of counterclockwise vertex loops plus an involution on
``(polygon, edge)`` pairs.  Edge ``i`` of a polygon runs from vertex ``i`` to
vertex ``i + 1``.  Paired edges must be opposite vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from ._tol import default_tol

TWO_PI = 2 * math.pi


class SurfaceError(ValueError):
    """Invalid polygon data or gluing."""


def mat2(a: float, b: float, c: float, d: float) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=float)


def _readonly(arr) -> np.ndarray:
    out = np.array(arr, dtype=float).reshape(-1, 2)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TranslationSurface:
    polygons: tuple
    pairing: Mapping = field(repr=False)
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "polygons", tuple(_readonly(p) for p in self.polygons))
        object.__setattr__(self, "pairing", MappingProxyType(dict(self.pairing)))
        labels = tuple(self.labels) or tuple(str(i) for i in range(len(self.polygons)))
        if len(labels) != len(self.polygons):
            raise SurfaceError("one label per polygon required")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_pairs(cls, polygons: Sequence, pairs: Sequence, labels: Sequence = ()):
        """Build from a list of unordered glue pairs ``((p, e), (q, f))``."""
        pairing = {}
        for x, y in pairs:
            x, y = tuple(x), tuple(y)
            if x in pairing or y in pairing:
                raise SurfaceError(f"edge glued twice in pair {x}, {y}")
            pairing[x] = y
            pairing[y] = x
        return cls(tuple(polygons), pairing, tuple(labels))

    def num_edges(self, p: int) -> int:
        return len(self.polygons[p])

    def edges(self):
        for p, poly in enumerate(self.polygons):
            for e in range(len(poly)):
                yield p, e

    def edge_vector(self, p: int, e: int) -> np.ndarray:
        poly = self.polygons[p]
        return poly[(e + 1) % len(poly)] - poly[e]

    def edge_vectors(self, p: int) -> np.ndarray:
        poly = self.polygons[p]
        return np.roll(poly, -1, axis=0) - poly

    def glue_pairs(self) -> list:
        """Each unordered pair once, sorted lexicographically."""
        return sorted((x, y) for x, y in self.pairing.items() if x < y)

    def translation(self, p: int, e: int) -> np.ndarray:
        """Vector carrying points of edge ``(p, e)`` onto its partner."""
        q, f = self.pairing[(p, e)]
        return self.polygons[q][(f + 1) % self.num_edges(q)] - self.polygons[p][e]

    def area(self) -> float:
        return sum(polygon_area(p) for p in self.polygons)

    def num_glued_edges(self) -> int:
        return len(self.pairing) // 2


def polygon_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def centroid(poly: np.ndarray) -> np.ndarray:
    """Arithmetic mean of the vertices."""
    return np.asarray(poly).mean(axis=0)


def _cross(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def _segments_cross(p1, p2, q1, q2, tol) -> bool:
    d1 = _cross(p2 - p1, q1 - p1)
    d2 = _cross(p2 - p1, q2 - p1)
    d3 = _cross(q2 - q1, p1 - q1)
    d4 = _cross(q2 - q1, p2 - q1)
    if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    ):
        return True

    def on_seg(a, b, c):
        return abs(_cross(b - a, c - a)) <= tol and (
            min(a[0], b[0]) - tol <= c[0] <= max(a[0], b[0]) + tol
            and min(a[1], b[1]) - tol <= c[1] <= max(a[1], b[1]) + tol
        )

    return on_seg(p1, p2, q1) or on_seg(p1, p2, q2) or on_seg(q1, q2, p1) or on_seg(q1, q2, p2)


@dataclass
class ValidationReport:
    ok: bool
    problems: list

    def __bool__(self):
        return self.ok

    def first(self) -> str | None:
        return self.problems[0] if self.problems else None


def validate(s: TranslationSurface, tol: float | None = None) -> ValidationReport:
    tol = default_tol() if tol is None else tol
    problems = []
    for p, poly in enumerate(s.polygons):
        k = len(poly)
        if k < 3:
            problems.append(f"polygon {p}: fewer than 3 vertices")
            continue
        vecs = s.edge_vectors(p)
        if np.max(np.abs(vecs.sum(axis=0))) > tol:
            problems.append(f"polygon {p}: edge vectors do not close")
        for e in range(k):
            if np.hypot(*vecs[e]) <= tol:
                problems.append(f"polygon {p} edge {e}: zero length")
        if polygon_area(poly) <= tol:
            problems.append(f"polygon {p}: non-positive signed area (not counterclockwise)")
            continue
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                if _segments_cross(poly[i], poly[(i + 1) % k], poly[j], poly[(j + 1) % k], tol):
                    problems.append(f"polygon {p}: edges {i} and {j} intersect")
    all_edges = set(s.edges())
    keys = set(s.pairing)
    for x in sorted(all_edges - keys):
        problems.append(f"polygon {x[0]} edge {x[1]}: unglued")
    for x in sorted(keys - all_edges):
        problems.append(f"pairing refers to missing edge {x}")
    for x in sorted(keys & all_edges):
        y = s.pairing[x]
        if y == x:
            problems.append(f"polygon {x[0]} edge {x[1]}: glued to itself")
            continue
        if y not in all_edges:
            continue
        if s.pairing.get(y) != x:
            problems.append(f"pairing is not an involution at {x} -> {y}")
            continue
        if x < y:
            dv = s.edge_vector(*x) + s.edge_vector(*y)
            if np.max(np.abs(dv)) > tol:
                problems.append(
                    f"edge vector mismatch: polygon {x[0]} edge {x[1]} vs polygon {y[0]} edge {y[1]}"
                )
    return ValidationReport(not problems, problems)


def check(s: TranslationSurface, tol: float | None = None) -> TranslationSurface:
    report = validate(s, tol)
    if not report:
        raise SurfaceError(report.first())
    return s


def canonicalize(polygons: Sequence, pairing: Mapping, labels: Sequence = (), tol: float | None = None):
    """Drop zero-length edges and collapse degenerate two-sided polygons.

    A zero-length edge must be glued to another zero-length edge; both are
    removed.  A polygon left with two edges is a segment: its two partners
    are glued to each other directly.  Returns the surface and a map from old
    polygon ids to new ids (``None`` for removed ones).
    """
    tol = default_tol() if tol is None else tol
    polys = [np.asarray(p, dtype=float) for p in polygons]
    labels = list(labels) or [str(i) for i in range(len(polys))]
    glue = dict(pairing)

    keep_edges = {}
    new_polys = {}
    for p, poly in enumerate(polys):
        k = len(poly)
        vecs = np.roll(poly, -1, axis=0) - poly
        kept = [e for e in range(k) if np.hypot(*vecs[e]) > tol]
        keep_edges[p] = {e: idx for idx, e in enumerate(kept)}
        new_polys[p] = poly[kept] if kept else poly[:0]
    new_glue = {}
    for (p, e), (q, f) in glue.items():
        ke, kf = e in keep_edges[p], f in keep_edges[q]
        if ke != kf:
            raise SurfaceError(f"zero-length edge {(p, e) if not ke else (q, f)} glued to a non-degenerate edge")
        if ke:
            new_glue[(p, keep_edges[p][e])] = (q, keep_edges[q][f])

    alive = {p for p in new_polys if len(new_polys[p]) > 0}
    changed = True
    while changed:
        changed = False
        for p in sorted(alive):
            if len(new_polys[p]) != 2:
                continue
            x, y = new_glue.pop((p, 0)), new_glue.pop((p, 1))
            if x == (p, 1) or x[0] == p or y[0] == p:
                raise SurfaceError(f"degenerate polygon {p} is glued to itself")
            new_glue[x] = y
            new_glue[y] = x
            alive.discard(p)
            changed = True
            break
    for p in alive:
        if len(new_polys[p]) < 3:
            raise SurfaceError(f"polygon {p} degenerates to fewer than two edges")

    order = sorted(alive)
    renum = {p: i for i, p in enumerate(order)}
    out_pairing = {(renum[p], e): (renum[q], f) for (p, e), (q, f) in new_glue.items()}
    surface = TranslationSurface(
        tuple(new_polys[p] for p in order), out_pairing, tuple(labels[p] for p in order)
    )
    return surface, {p: renum.get(p) for p in range(len(polys))}


@dataclass(frozen=True)
class VertexClass:
    corners: tuple
    angle: float

    @property
    def order(self) -> int:
        return int(round(self.angle / TWO_PI)) - 1


def corner_angle(poly: np.ndarray, i: int) -> float:
    k = len(poly)
    a = poly[i] - poly[(i - 1) % k]
    b = poly[(i + 1) % k] - poly[i]
    turn = math.atan2(_cross(a, b), float(np.dot(a, b)))
    return math.pi - turn


def vertex_cycles(s: TranslationSurface, tol: float | None = None) -> list:
    """Identification classes of polygon corners with their cone angles.

    Corner ``(p, i)`` sits at vertex ``i`` of polygon ``p``.  Rotating
    counterclockwise past the incoming edge ``i - 1`` crosses into the
    partner polygon at the start of the partner edge.
    """
    tol = default_tol() if tol is None else tol
    seen = set()
    out = []
    for p, poly in enumerate(s.polygons):
        for i in range(len(poly)):
            if (p, i) in seen:
                continue
            corners = []
            angle = 0.0
            cur = (p, i)
            while cur not in seen:
                seen.add(cur)
                corners.append(cur)
                angle += corner_angle(s.polygons[cur[0]], cur[1])
                q, k = cur
                cur = s.pairing[(q, (k - 1) % s.num_edges(q))]
            if cur != (p, i):
                raise SurfaceError(f"corner walk from {(p, i)} does not close")
            turns = angle / TWO_PI
            if abs(turns - round(turns)) * TWO_PI > tol * len(corners) or round(turns) < 1:
                raise SurfaceError(f"cone angle {angle!r} at corner {(p, i)} is not a multiple of 2pi")
            out.append(VertexClass(tuple(corners), angle))
    return out


def component_lists(s: TranslationSurface) -> list:
    parent = list(range(len(s.polygons)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (p, _), (q, _) in s.pairing.items():
        parent[find(p)] = find(q)
    groups = {}
    for p in range(len(s.polygons)):
        groups.setdefault(find(p), []).append(p)
    return sorted(groups.values())


def connected_components(s: TranslationSurface) -> int:
    return len(component_lists(s))


@dataclass(frozen=True)
class StratumInfo:
    genus: int
    cone_angles: tuple
    zero_orders: tuple
    components: int
    component_genera: tuple = ()

    @property
    def zeros(self) -> tuple:
        """Orders of the actual zeros (cone angle above 2 pi)."""
        return tuple(k for k in self.zero_orders if k > 0)

    @property
    def marked_points(self) -> int:
        return sum(1 for k in self.zero_orders if k == 0)

    def gauss_bonnet_ok(self) -> bool:
        return sum(self.zero_orders) == 2 * self.genus - 2 * self.components

    def zeros_label(self) -> str:
        zs = self.zeros
        if not zs:
            return "none"
        counts = {}
        for k in zs:
            counts[k] = counts.get(k, 0) + 1
        return " ".join(f"{c}x{k}" for k, c in sorted(counts.items(), reverse=True))


def stratum(s: TranslationSurface, tol: float | None = None) -> StratumInfo:
    classes = vertex_cycles(s, tol)
    comps = component_lists(s)
    where = {p: c for c, ps in enumerate(comps) for p in ps}
    verts = [0] * len(comps)
    for vc in classes:
        verts[where[vc.corners[0][0]]] += 1
    genera = []
    for c, ps in enumerate(comps):
        faces = len(ps)
        edges = sum(s.num_edges(p) for p in ps) // 2
        chi = verts[c] - edges + faces
        if chi % 2:
            raise SurfaceError("odd Euler characteristic; gluing is not orientable")
        genera.append((2 - chi) // 2)
    angles = tuple(sorted((vc.angle for vc in classes), reverse=True))
    orders = tuple(sorted((vc.order for vc in classes), reverse=True))
    return StratumInfo(sum(genera), angles, orders, len(comps), tuple(genera))


def apply_matrix(s: TranslationSurface, M) -> TranslationSurface:
    """Image of the surface under a linear map.

    For orientation-reversing ``M`` each vertex loop is reversed, old edge
    ``i`` becoming new edge ``-i - 1`` (mod k).
    """
    M = np.asarray(M, dtype=float)
    det = float(np.linalg.det(M))
    if abs(det) < 1e-14:
        raise SurfaceError("singular matrix")
    polys = [np.asarray(p) @ M.T for p in s.polygons]
    if det > 0:
        return TranslationSurface(tuple(polys), s.pairing, s.labels)
    new_polys = [np.vstack([p[:1], p[:0:-1]]) for p in polys]

    def mv(p, e):
        k = s.num_edges(p)
        return (p, (-e - 1) % k)

    pairing = {mv(*x): mv(*y) for x, y in s.pairing.items()}
    return TranslationSurface(tuple(new_polys), pairing, s.labels)


def translate_polygons(s: TranslationSurface, offsets) -> TranslationSurface:
    polys = [p + np.asarray(o, dtype=float) for p, o in zip(s.polygons, offsets)]
    return TranslationSurface(tuple(polys), s.pairing, s.labels)


@dataclass(frozen=True)
class Matching:
    """Witness of translation equivalence.

    ``kind == "polygon"``: ``polygon_map[p] = (q, r)`` meaning polygon ``p``
    is a translate of ``q`` with edge ``i`` landing on edge ``i + r``.
    ``kind == "cylinder"``: ``cylinder_map[c] = (d, t)`` matches horizontal
    cylinders, ``t`` the rotation between their coordinates.
    """

    kind: str
    polygon_map: Mapping = field(default_factory=dict)
    cylinder_map: Mapping = field(default_factory=dict)


def _shifts(s1, p, s2, q, tol) -> list:
    v1, v2 = s1.edge_vectors(p), s2.edge_vectors(q)
    k = len(v1)
    if len(v2) != k:
        return []
    out = []
    for r in range(k):
        if np.max(np.abs(np.roll(v2, -r, axis=0) - v1)) <= tol:
            out.append(r)
    return out


def _propagate(s1, s2, seed, image, shift, taken, tol):
    assign = {seed: (image, shift)}
    used = {image}
    queue = [seed]
    while queue:
        p = queue.pop()
        q, r = assign[p]
        k = s1.num_edges(p)
        for e in range(k):
            p2, e2 = s1.pairing[(p, e)]
            q2, f2 = s2.pairing[(q, (e + r) % k)]
            k2 = s1.num_edges(p2)
            if s2.num_edges(q2) != k2:
                return None
            r2 = (f2 - e2) % k2
            if p2 in assign:
                if assign[p2] != (q2, r2):
                    return None
                continue
            if q2 in used or q2 in taken:
                return None
            v1 = s1.edge_vectors(p2)
            v2 = np.roll(s2.edge_vectors(q2), -r2, axis=0)
            if np.max(np.abs(v1 - v2)) > tol:
                return None
            assign[p2] = (q2, r2)
            used.add(q2)
            queue.append(p2)
    return assign


def polygon_matching(s1: TranslationSurface, s2: TranslationSurface, tol: float | None = None):
    """Match polygons of ``s1`` to translates in ``s2`` respecting the gluings."""
    tol = default_tol() if tol is None else tol
    if len(s1.polygons) != len(s2.polygons):
        return None
    if sorted(map(len, s1.polygons)) != sorted(map(len, s2.polygons)):
        return None
    comps = component_lists(s1)

    def perimeter(p):
        return float(np.hypot(*s1.edge_vectors(p).T).sum())

    def solve(ci, taken, acc):
        if ci == len(comps):
            return acc
        seed = max(comps[ci], key=lambda p: (perimeter(p), -p))
        for q in range(len(s2.polygons)):
            if q in taken:
                continue
            for r in _shifts(s1, seed, s2, q, tol):
                trial = _propagate(s1, s2, seed, q, r, taken, tol)
                if trial is None or len(trial) != len(comps[ci]):
                    continue
                found = solve(ci + 1, taken | {v[0] for v in trial.values()}, {**acc, **trial})
                if found is not None:
                    return found
        return None

    result = solve(0, frozenset(), {})
    return None if result is None else Matching("polygon", result)


def is_translation_equivalent(s1, s2, tol: float | None = None, recut: bool = True):
    """Find a translation equivalence between two surfaces.

    Polygon-by-polygon matching is tried first.  If the decompositions
    differ, horizontal cylinder diagrams are compared instead (and vertical
    ones, by rotating both surfaces a quarter turn).
    """
    tol = default_tol() if tol is None else tol
    found = polygon_matching(s1, s2, tol)
    if found is not None or not recut:
        return found
    from .cylinders import cylinder_matching

    found = cylinder_matching(s1, s2, tol)
    if found is not None:
        return found
    quarter = mat2(0, -1, 1, 0)
    return cylinder_matching(apply_matrix(s1, quarter), apply_matrix(s2, quarter), tol)


def is_affine_automorphism(s: TranslationSurface, M, tol: float | None = None, recut: bool = True) -> bool:
    M = np.asarray(M, dtype=float)
    tol = default_tol() if tol is None else tol
    if abs(abs(np.linalg.det(M)) - 1) > 1e-8:
        return False
    return is_translation_equivalent(apply_matrix(s, M), s, tol, recut=recut) is not None


def edge_shift(s: TranslationSurface, p: int, q: int, tol: float | None = None):
    """Cyclic shift ``r`` with polygon ``q`` a translate of ``p`` (edge i -> i + r)."""
    tol = default_tol() if tol is None else tol
    shifts = _shifts(s, p, s, q, tol)
    return shifts[0] if shifts else None


def quotient_by_involution(s: TranslationSurface, sigma: Mapping, tol: float | None = None) -> TranslationSurface:
    """Quotient by a fixed-point-free translation automorphism of order two.

    ``sigma`` maps polygon ids to polygon ids; each polygon must be a pure
    translate of its image and the gluings must be respected.  The smaller id
    of each orbit survives.
    """
    tol = default_tol() if tol is None else tol
    n = len(s.polygons)
    if set(sigma) != set(range(n)):
        raise SurfaceError("sigma must be defined on every polygon")
    shift = {}
    for p in range(n):
        q = sigma[p]
        if q == p:
            raise SurfaceError(f"sigma fixes polygon {p}")
        if sigma[q] != p:
            raise SurfaceError("sigma is not an involution")
        r = edge_shift(s, p, q, tol)
        if r is None:
            raise SurfaceError(f"polygon {q} is not a translate of polygon {p}")
        shift[p] = r
    for (p, e), (q, f) in s.pairing.items():
        kp, kq = s.num_edges(p), s.num_edges(q)
        if s.pairing[(sigma[p], (e + shift[p]) % kp)] != (sigma[q], (f + shift[q]) % kq):
            raise SurfaceError(f"sigma does not respect the gluing at {(p, e)}")
    reps = sorted(p for p in range(n) if p < sigma[p])
    renum = {p: i for i, p in enumerate(reps)}
    pairing = {}
    for p in reps:
        for e in range(s.num_edges(p)):
            q, f = s.pairing[(p, e)]
            if q not in renum:
                f = (f + shift[q]) % s.num_edges(q)
                q = sigma[q]
            if (q, f) == (p, e):
                raise SurfaceError(f"sigma fixes the midpoint of edge {(p, e)}")
            pairing[(renum[p], e)] = (renum[q], f)
    out = TranslationSurface(tuple(s.polygons[p] for p in reps), pairing, tuple(s.labels[p] for p in reps))
    return check(out, tol)
