"""Exact segment-arrangement overlay.

All boolean work in the package (polygon clipping, coverage residues) goes
through :class:`Arrangement`: input rings are cut into a planar graph, every
face cycle gets a sample point strictly inside the face, and faces are kept or
dropped by a membership predicate evaluated at that sample.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .geom import (
    GeometryError,
    Location,
    Overlap,
    Point,
    Polygon,
    cross,
    intersect_segments,
    point_in_ring,
    ray_segment_param,
    self_intersection,
    signed_area2,
    simplify_ring,
)

Ring = Sequence[Point]


def _half(dx: Fraction, dy: Fraction) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _angle_cmp(o: Point):
    def cmp(a: Point, b: Point) -> int:
        ax, ay = a.x - o.x, a.y - o.y
        bx, by = b.x - o.x, b.y - o.y
        ha, hb = _half(ax, ay), _half(bx, by)
        if ha != hb:
            return ha - hb
        c = ax * by - ay * bx
        return -1 if c > 0 else (1 if c < 0 else 0)

    return cmp


def split_segments(segments: Iterable[tuple[Point, Point]]) -> set[tuple[Point, Point]]:
    """Cut segments at every mutual intersection; returns undirected edges (a < b)."""
    segs = []
    seen = set()
    for a, b in segments:
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in seen:
            seen.add(key)
            segs.append(key)
    boxes = [(min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y)) for a, b in segs]
    cuts: list[set[Point]] = [{a, b} for a, b in segs]
    n = len(segs)
    order = sorted(range(n), key=lambda k: boxes[k][0])
    # sweep on x-extent to skip far pairs
    for oi, i in enumerate(order):
        bi = boxes[i]
        a, b = segs[i]
        for j in order[oi + 1:]:
            bj = boxes[j]
            if bj[0] > bi[2]:
                break
            if bi[3] < bj[1] or bj[3] < bi[1]:
                continue
            c, d = segs[j]
            hit = intersect_segments(a, b, c, d)
            if hit is None:
                continue
            if isinstance(hit, Overlap):
                cuts[i].update((hit.a, hit.b))
                cuts[j].update((hit.a, hit.b))
            else:
                cuts[i].add(hit)
                cuts[j].add(hit)
    edges: set[tuple[Point, Point]] = set()
    for (a, b), pts in zip(segs, cuts):
        chain = sorted(pts)  # a < b lexicographically and all collinear, so sorting orders them
        for p, q in zip(chain, chain[1:]):
            edges.add((p, q))
    return edges


class Arrangement:
    """Planar subdivision induced by a set of segments."""

    def __init__(self, segments: Iterable[tuple[Point, Point]]) -> None:
        self.edges = split_segments(segments)
        adj: dict[Point, list[Point]] = {}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        self.rot: dict[Point, list[Point]] = {}
        self._pos: dict[tuple[Point, Point], int] = {}
        for v, nbrs in adj.items():
            nbrs.sort(key=cmp_to_key(_angle_cmp(v)))
            self.rot[v] = nbrs
            for k, w in enumerate(nbrs):
                self._pos[(v, w)] = k
        self.cycles: list[list[Point]] = []
        self.cycle_of: dict[tuple[Point, Point], int] = {}
        self._trace()
        self.samples = [self._sample(c) for c in self.cycles]

    def next_half_edge(self, u: Point, v: Point) -> tuple[Point, Point]:
        nbrs = self.rot[v]
        k = self._pos[(v, u)]
        return v, nbrs[k - 1]

    def _trace(self) -> None:
        for a, b in self.edges:
            for h in ((a, b), (b, a)):
                if h in self.cycle_of:
                    continue
                cid = len(self.cycles)
                ring = []
                cur = h
                while cur not in self.cycle_of:
                    self.cycle_of[cur] = cid
                    ring.append(cur[0])
                    cur = self.next_half_edge(*cur)
                self.cycles.append(ring)

    def _sample(self, ring: list[Point]) -> Point:
        a = ring[0]
        b = ring[1] if len(ring) > 1 else ring[0]
        mx, my = (a.x + b.x) / 2, (a.y + b.y) / 2
        m = Point(mx, my)
        nrm = Point(-(b.y - a.y), b.x - a.x)
        best: Fraction | None = None
        for c, d in self.edges:
            t = ray_segment_param(m, nrm, c, d)
            if t is None or t <= 0:
                continue
            if best is None or t < best:
                best = t
        t = Fraction(1) if best is None else best / 2
        return Point(mx + nrm.x * t, my + nrm.y * t)

    def area2(self, cid: int) -> Fraction:
        return signed_area2(self.cycles[cid])


class BoolOp(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    DIFFERENCE = "difference"


class Overlay:
    """Selection of arrangement faces by a predicate on ring memberships."""

    def __init__(self, rings: Sequence[Ring], select: Callable[[list[bool]], bool]) -> None:
        self.rings = [list(r) for r in rings]
        segs = []
        for r in self.rings:
            n = len(r)
            segs.extend((r[i], r[(i + 1) % n]) for i in range(n))
        self.select = select
        self.arr = Arrangement(segs)
        self.selected = [self._inside(s) for s in self.arr.samples]

    def _inside(self, p: Point) -> bool:
        flags = [point_in_ring(p, r) is Location.INTERIOR for r in self.rings]
        return self.select(flags)

    @property
    def area(self) -> Fraction:
        total = Fraction(0)
        for cid, sel in enumerate(self.selected):
            if sel:
                total += self.arr.area2(cid)
        return total / 2

    def boundary_rings(self) -> list[list[Point]]:
        arr = self.arr
        sel = self.selected

        def is_bnd(u: Point, v: Point) -> bool:
            return sel[arr.cycle_of[(u, v)]] and not sel[arr.cycle_of[(v, u)]]

        used: set[tuple[Point, Point]] = set()
        rings = []
        for h, cid in arr.cycle_of.items():
            if h in used or not is_bnd(*h):
                continue
            ring = []
            cur = h
            while cur not in used:
                used.add(cur)
                ring.append(cur[0])
                u, v = cur
                nbrs = arr.rot[v]
                k = arr._pos[(v, u)]
                for step in range(1, len(nbrs) + 1):
                    w = nbrs[(k - step) % len(nbrs)]
                    if is_bnd(v, w):
                        cur = (v, w)
                        break
            rings.append(ring)
        return rings

    def polygons(self) -> list[Polygon]:
        """Result as disjoint simple pieces (holes are split away by vertical cuts)."""
        rings = [simplify_ring(r) for r in self.boundary_rings()]
        rings = [r for r in rings if len(r) >= 3 and signed_area2(r) != 0]
        holes = [r for r in rings if signed_area2(r) < 0]
        if not holes:
            return [Polygon(r, check=False) for r in rings]
        segs = []
        for r in rings:
            segs.extend((r[i], r[(i + 1) % len(r)]) for i in range(len(r)))
        cuts = []
        for h in holes:
            top = max(h, key=lambda p: (p.y, p.x))
            bot = min(h, key=lambda p: (p.y, p.x))
            for start, d in ((top, Point(Fraction(0), Fraction(1))), (bot, Point(Fraction(0), Fraction(-1)))):
                best = None
                for a, b in segs:
                    t = ray_segment_param(start, d, a, b)
                    if t is not None and t > 0 and (best is None or t < best):
                        best = t
                if best is not None:
                    cuts.append((start, Point(start.x, start.y + d.y * best)))
        arr = Arrangement(segs + cuts)
        out = []
        for cid, ring in enumerate(arr.cycles):
            if arr.area2(cid) > 0 and self._inside(arr.samples[cid]):
                r = simplify_ring(ring)
                if len(r) >= 3:
                    out.append(Polygon(r, check=False))
        return out


def _check_simple(p: Polygon) -> None:
    if self_intersection(p.vertices) is not None:
        raise GeometryError("boolean operation on a self-intersecting polygon")


def polygon_boolean(a: Polygon, b: Polygon, op: BoolOp | str) -> list[Polygon]:
    """Exact union / intersection / difference of two simple polygons."""
    op = BoolOp(op)
    _check_simple(a)
    _check_simple(b)
    if op is BoolOp.UNION:
        sel = lambda f: f[0] or f[1]
    elif op is BoolOp.INTERSECTION:
        sel = lambda f: f[0] and f[1]
    else:
        sel = lambda f: f[0] and not f[1]
    return Overlay([a.vertices, b.vertices], sel).polygons()


def boolean_area(a: Polygon, b: Polygon, op: BoolOp | str) -> Fraction:
    op = BoolOp(op)
    sel = {
        BoolOp.UNION: lambda f: f[0] or f[1],
        BoolOp.INTERSECTION: lambda f: f[0] and f[1],
        BoolOp.DIFFERENCE: lambda f: f[0] and not f[1],
    }[op]
    return Overlay([a.vertices, b.vertices], sel).area


def residue(target: Ring, cutters: Sequence[Ring]) -> Overlay:
    """``target`` minus the union of ``cutters``."""
    rings = [target, *cutters]
    return Overlay(rings, lambda f: f[0] and not any(f[1:]))


def intersection_area(a: Ring, b: Ring) -> Fraction:
    return Overlay([a, b], lambda f: f[0] and f[1]).area
