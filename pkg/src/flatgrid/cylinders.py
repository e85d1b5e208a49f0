"""Horizontal cylinder diagrams of completely periodic translation surfaces.

Two polygon decompositions of the same surface rarely match polygon by
polygon.  When the horizontal direction is periodic, the surface is also
determined by its maximal horizontal cylinders: each one has a height, a
circumference, marked points on both boundary circles, and a rule saying
which boundary saddle connections are glued together.  Comparing that data
is independent of how the surface was cut.

Only convex polygons are supported.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from ._tol import default_tol
from .surface import Matching, TranslationSurface, component_lists, vertex_cycles

# Cap on cut heights per polygon vertex before giving up on periodicity.
CUTS_PER_VERTEX = 40


class NotPeriodic(ValueError):
    """The horizontal direction does not close up into cylinders."""


def _insert(values: list, h: float, tol: float) -> bool:
    """Insert into a sorted list unless a value within ``tol`` is present."""
    k = bisect.bisect_left(values, h)
    if (k < len(values) and values[k] - h <= tol) or (k > 0 and h - values[k - 1] <= tol):
        return False
    values.insert(k, h)
    return True


@dataclass
class _Slab:
    poly: int
    y0: float
    y1: float
    left: int
    right: int
    band: int = -1
    shift: float = 0.0

    def x_at(self, s: TranslationSurface, edge: int, y: float) -> float:
        poly = s.polygons[self.poly]
        a, b = poly[edge], poly[(edge + 1) % len(poly)]
        t = (y - a[1]) / (b[1] - a[1])
        return float(a[0] + t * (b[0] - a[0]))

    def span(self, s, y) -> tuple:
        return self.x_at(s, self.left, y), self.x_at(s, self.right, y)


def _is_convex(poly: np.ndarray, tol: float) -> bool:
    v = np.roll(poly, -1, axis=0) - poly
    w = np.roll(v, -1, axis=0)
    return bool(np.all(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0] >= -tol))


def _cut_heights(s: TranslationSurface, tol: float) -> list:
    heights = [[] for _ in s.polygons]
    for p, poly in enumerate(s.polygons):
        for y in poly[:, 1]:
            _insert(heights[p], float(y), tol)
    queue = [(p, h) for p in range(len(s.polygons)) for h in heights[p]]
    total = sum(map(len, heights))
    cap = CUTS_PER_VERTEX * sum(len(p) for p in s.polygons)
    while queue:
        p, h = queue.pop()
        poly = s.polygons[p]
        for e in range(len(poly)):
            ya, yb = sorted((poly[e][1], poly[(e + 1) % len(poly)][1]))
            if not (ya + tol < h < yb - tol):
                continue
            q, _ = s.pairing[(p, e)]
            h2 = h + float(s.translation(p, e)[1])
            if _insert(heights[q], h2, tol):
                queue.append((q, h2))
                total += 1
                if total > cap:
                    raise NotPeriodic("horizontal leaves through vertices do not close")
    return heights


@dataclass
class CylinderData:
    height: float
    circumference: float
    bottom: list
    top: list
    gluing: dict = field(default_factory=dict)


@dataclass
class Diagram:
    cylinders: list
    components: list

    def __len__(self):
        return len(self.cylinders)


def horizontal_diagram(s: TranslationSurface, tol: float | None = None) -> Diagram:
    tol = default_tol() if tol is None else tol
    for p, poly in enumerate(s.polygons):
        if not _is_convex(poly, tol):
            raise ValueError(f"polygon {p} is not convex")
    heights = _cut_heights(s, tol)

    classes = vertex_cycles(s, tol)
    singular = [c for c in classes if c.order > 0]
    marked = set()
    for c in singular or classes:
        marked.update(c.corners)

    slabs = []
    slab_at = {}
    for p, poly in enumerate(s.polygons):
        k = len(poly)
        vec = np.roll(poly, -1, axis=0) - poly
        hs = heights[p]
        for t in range(len(hs) - 1):
            y0, y1 = hs[t], hs[t + 1]
            ym = 0.5 * (y0 + y1)
            left = right = None
            for e in range(k):
                a, b = poly[e][1], poly[(e + 1) % k][1]
                if min(a, b) - tol <= ym <= max(a, b) + tol and abs(vec[e][1]) > tol:
                    if vec[e][1] > 0:
                        right = e
                    else:
                        left = e
            slab_at[(p, t)] = len(slabs)
            slabs.append(_Slab(p, y0, y1, left, right))

    def find_slab(q, y0):
        hs = heights[q]
        for t in range(len(hs) - 1):
            if abs(hs[t] - y0) <= tol * 10:
                return slab_at[(q, t)]
        raise NotPeriodic(f"no slab of polygon {q} starts at height {y0}")

    def right_neighbour(i):
        sl = slabs[i]
        q, _ = s.pairing[(sl.poly, sl.right)]
        tau = s.translation(sl.poly, sl.right)
        return find_slab(q, sl.y0 + tau[1]), tau

    # Bands: cycles of slabs under the right-neighbour map.
    bands = []
    for i in range(len(slabs)):
        if slabs[i].band >= 0:
            continue
        members = []
        cur = i
        slabs[cur].shift = -slabs[cur].span(s, slabs[cur].y0)[0]
        y_ref = slabs[cur].y0
        length = 0.0
        while slabs[cur].band < 0:
            slabs[cur].band = len(bands)
            members.append(cur)
            nxt, tau = right_neighbour(cur)
            lo, hi = slabs[cur].span(s, slabs[cur].y0)
            length += hi - lo
            if slabs[nxt].band < 0:
                slabs[nxt].shift = slabs[cur].shift - float(tau[0])
            cur = nxt
        bands.append(dict(members=members, y_ref=y_ref, height=slabs[i].y1 - slabs[i].y0, c=length))

    def marks(i, top):
        sl = slabs[i]
        y = sl.y1 if top else sl.y0
        lo, hi = sl.span(s, y)
        out = []
        poly = s.polygons[sl.poly]
        for v, pt in enumerate(poly):
            if abs(pt[1] - y) <= tol and lo - tol <= pt[0] <= hi + tol and (sl.poly, v) in marked:
                out.append(float(pt[0]) + sl.shift)
        return out

    def above(i):
        """Slab directly above ``i`` and the map from band coordinates of ``i`` to its band."""
        sl = slabs[i]
        lo, hi = sl.span(s, sl.y1)
        if hi - lo <= tol:
            return None
        hs = heights[sl.poly]
        t = hs.index(sl.y1) if sl.y1 in hs else None
        if t is not None and t < len(hs) - 1:
            j = slab_at[(sl.poly, t)]
            return j, slabs[j].shift - sl.shift
        poly = s.polygons[sl.poly]
        for e in range(len(poly)):
            a, b = poly[e], poly[(e + 1) % len(poly)]
            if abs(a[1] - sl.y1) <= tol and abs(b[1] - sl.y1) <= tol and b[0] < a[0]:
                q, _ = s.pairing[(sl.poly, e)]
                tau = s.translation(sl.poly, e)
                j = find_slab(q, sl.y1 + tau[1])
                return j, slabs[j].shift + float(tau[0]) - sl.shift
        raise NotPeriodic(f"no edge on top of slab in polygon {sl.poly}")

    def wrap(x, c):
        r = math.fmod(x, c)
        if r < 0:
            r += c
        return 0.0 if c - r <= tol * 100 else r

    def dedupe(xs, c):
        out = []
        for x in sorted(wrap(x, c) for x in xs):
            if not out or x - out[-1] > tol * 100:
                out.append(x)
        if len(out) > 1 and out[0] + c - out[-1] <= tol * 100:
            out.pop()
        return out

    band_top = [dedupe([x for i in b["members"] for x in marks(i, True)], b["c"]) for b in bands]
    band_bottom = [dedupe([x for i in b["members"] for x in marks(i, False)], b["c"]) for b in bands]

    # Stack bands whose shared boundary circle carries no marked point.
    up = {}
    for bi, b in enumerate(bands):
        if band_top[bi]:
            continue
        for i in b["members"]:
            nxt = above(i)
            if nxt is not None:
                up[bi] = (slabs[nxt[0]].band, nxt[1])
                break
    starts = [bi for bi in range(len(bands)) if band_bottom[bi]]
    cyl_of_band = {}
    band_offset = {}
    cyls = []
    for bi in starts:
        cid = len(cyls)
        offset, height, cur = 0.0, 0.0, bi
        seen = set()
        while True:
            if cur in seen:
                raise NotPeriodic("band stack does not terminate")
            seen.add(cur)
            cyl_of_band[cur] = cid
            band_offset[cur] = offset
            height += bands[cur]["height"]
            if cur not in up:
                break
            nb, delta = up[cur]
            offset -= delta
            cur = nb
        c = bands[bi]["c"]
        top = dedupe([x + offset for x in band_top[cur]], c)
        cyls.append(CylinderData(height, c, band_bottom[bi], top))
        cyls[-1]._top_band = cur
    if len(cyl_of_band) != len(bands):
        raise NotPeriodic("some bands have no marked boundary")

    for cid, cyl in enumerate(cyls):
        tb = cyl._top_band
        c = cyl.circumference
        for x in cyl.top:
            xb = x - band_offset[tb]
            hit = None
            for i in bands[tb]["members"]:
                lo, hi = slabs[i].span(s, slabs[i].y1)
                lo += slabs[i].shift
                hi += slabs[i].shift
                if hi - lo <= tol:
                    continue
                d = wrap(xb - lo, c)
                if d < hi - lo - tol * 100:
                    hit = i
                    break
            if hit is None:
                raise NotPeriodic("top marked point not on a slab")
            j, delta = above(hit)
            other = cyl_of_band[slabs[j].band]
            lo = slabs[hit].span(s, slabs[hit].y1)[0] + slabs[hit].shift
            xx = lo + wrap(xb - lo, c)
            cyl.gluing[x] = (other, wrap(xx + delta - band_offset[slabs[j].band], cyls[other].circumference))

    comps = []
    parent = list(range(len(cyls)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cid, cyl in enumerate(cyls):
        for other, _ in cyl.gluing.values():
            parent[find(cid)] = find(other)
    groups = {}
    for cid in range(len(cyls)):
        groups.setdefault(find(cid), []).append(cid)
    comps = sorted(groups.values())
    return Diagram(cyls, comps)


def _close_mod(a, b, c, tol):
    d = abs(a - b) % c
    return min(d, c - d) <= tol


def _same_set(xs, ys, shift, c, tol):
    if len(xs) != len(ys):
        return False
    return all(any(_close_mod(x + shift, y, c, tol) for y in ys) for x in xs)


def _lookup(gluing, x, c, tol):
    for key, val in gluing.items():
        if _close_mod(key, x, c, tol):
            return val
    return None


def _propagate(d1, d2, seed, image, shift, taken, tol):
    assign = {seed: (image, shift)}
    queue = [seed]
    while queue:
        a = queue.pop()
        b, t = assign[a]
        ca, cb = d1.cylinders[a], d2.cylinders[b]
        if abs(ca.height - cb.height) > tol or abs(ca.circumference - cb.circumference) > tol:
            return None
        c = ca.circumference
        if not (_same_set(ca.bottom, cb.bottom, t, c, tol) and _same_set(ca.top, cb.top, t, c, tol)):
            return None
        for x, (a2, y) in ca.gluing.items():
            target = _lookup(cb.gluing, x + t, c, tol)
            if target is None:
                return None
            b2, y2 = target
            t2 = y2 - y
            if a2 in assign:
                bb, tt = assign[a2]
                if bb != b2 or not _close_mod(tt, t2, d1.cylinders[a2].circumference, tol):
                    return None
                continue
            if b2 in taken or any(v[0] == b2 for v in assign.values()):
                return None
            assign[a2] = (b2, t2)
            queue.append(a2)
    return assign


def match_diagrams(d1: Diagram, d2: Diagram, tol: float) -> dict | None:
    if len(d1) != len(d2):
        return None

    def solve(ci, taken, acc):
        if ci == len(d1.components):
            return acc
        comp = d1.components[ci]
        seed = max(comp, key=lambda a: (d1.cylinders[a].circumference * d1.cylinders[a].height, -a))
        cs = d1.cylinders[seed]
        for b, cb in enumerate(d2.cylinders):
            if b in taken or not cb.bottom or len(cb.bottom) != len(cs.bottom):
                continue
            for y in cb.bottom:
                trial = _propagate(d1, d2, seed, b, y - cs.bottom[0], taken, tol)
                if trial is None or len(trial) != len(comp):
                    continue
                found = solve(ci + 1, taken | {v[0] for v in trial.values()}, {**acc, **trial})
                if found is not None:
                    return found
        return None

    return solve(0, frozenset(), {})


def cylinder_matching(s1: TranslationSurface, s2: TranslationSurface, tol: float | None = None):
    """Compare horizontal cylinder diagrams; ``None`` if they differ or are not periodic."""
    tol = default_tol() if tol is None else tol
    try:
        d1 = horizontal_diagram(s1, tol)
        d2 = horizontal_diagram(s2, tol)
    except NotPeriodic:
        return None
    found = match_diagrams(d1, d2, tol * 1000)
    return None if found is None else Matching("cylinder", cylinder_map=found)
