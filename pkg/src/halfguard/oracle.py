"""Exact optimum for small instances.

Guards are drawn from a finite candidate set, coverage is reduced to set cover
over witness points, and every answer is re-checked with the exact overlay.
When the re-check finds an uncovered face, a point inside it joins the
witnesses and the cover is solved again.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .geom import (
    Direction,
    HalfGuard,
    Location,
    Point,
    Polygon,
    intersect_segments,
    line_intersection,
    midpoint,
    ray_segment_param,
    reflex_vertices,
    segment_in_polygon,
)
from .overlay import Arrangement, intersection_area
from .visibility import covers, half_visibility_polygon, visibility_polygon

DEFAULT_KMAX = 8


class OracleTimeout(RuntimeError):
    pass


class OracleLimit(RuntimeError):
    """Candidate or witness set grew past the configured size limit."""


def default_timeout() -> float:
    return float(os.environ.get("HALFGUARD_TIMEOUT_SECS", "300"))


# -- lines -------------------------------------------------------------------

Line = tuple[Fraction, Fraction, Fraction]  # a*x + b*y = c, normalised


def _line(p: Point, q: Point) -> Line:
    a = q.y - p.y
    b = p.x - q.x
    c = a * p.x + b * p.y
    # canonical sign/scale so equal lines compare equal
    k = a if a != 0 else b
    return a / k, b / k, c / k


def _line_points(ln: Line) -> tuple[Point, Point]:
    a, b, c = ln
    if b != 0:
        return Point(Fraction(0), c / b), Point(Fraction(1), (c - a) / b)
    return Point(c / a, Fraction(0)), Point(c / a, Fraction(1))


def _meet(l1: Line, l2: Line) -> Point | None:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    den = a1 * b2 - a2 * b1
    if den == 0:
        return None
    return Point((c1 * b2 - c2 * b1) / den, (a1 * c2 - a2 * c1) / den)


def _first_hit(poly: Polygon, o: Point, d: Point) -> Point | None:
    best = None
    for c, e in poly.edges():
        t = ray_segment_param(o, d, c, e)
        if t is not None and t > 0 and (best is None or t < best):
            best = t
    if best is None:
        return None
    hit = Point(o.x + d.x * best, o.y + d.y * best)
    if poly.locate(midpoint(o, hit)) is not Location.INTERIOR:
        return None
    return hit


def _extension_hits(poly: Polygon, a: Point, b: Point) -> list[Point]:
    """Boundary points reached by extending segment ``ab`` past either end."""
    out = []
    for o, d in ((b, Point(b.x - a.x, b.y - a.y)), (a, Point(a.x - b.x, a.y - b.y))):
        h = _first_hit(poly, o, d)
        if h is not None:
            out.append(h)
    return out


def candidate_points(
    poly: Polygon,
    extra: Iterable[Point] = (),
    rich: bool = False,
    limit: int = 4000,
) -> list[HalfGuard]:
    """Finite candidate guard set, both directions at every point.

    Default: vertices, edge-extension hits, hits of lines through mutually
    visible vertex pairs, and pairwise crossings of edge lines and verticals
    through vertices.  ``rich`` adds pairwise crossings of the vertex-pair
    lines as well, which is what guards placed off every edge extension need.
    """
    verts = list(poly.vertices)
    pts: set[Point] = set(verts)
    pts.update(extra)
    base_lines: set[Line] = set()
    for a, b in poly.edges():
        base_lines.add(_line(a, b))
        pts.update(_extension_hits(poly, a, b))
    for v in verts:
        base_lines.add(_line(v, Point(v.x, v.y + 1)))
    pair_lines: set[Line] = set()
    for u, v in combinations(verts, 2):
        ln = _line(u, v)
        if ln in base_lines or ln in pair_lines:
            continue
        if segment_in_polygon(u, v, poly):
            pair_lines.add(ln)
            pts.update(_extension_hits(poly, u, v))
    lines = list(base_lines)
    if rich:
        lines += list(pair_lines)
    for l1, l2 in combinations(lines, 2):
        p = _meet(l1, l2)
        if p is not None and p not in pts and poly.contains(p):
            pts.add(p)
            if len(pts) > limit:
                raise OracleLimit(f"more than {limit} candidate points")
    ordered = sorted(pts)
    return [HalfGuard(p, d) for p in ordered for d in (Direction.LEFT, Direction.RIGHT)]


def extension_candidates(poly: Polygon) -> list[HalfGuard]:
    """Guards restricted to edges and edge extensions, discretized.

    Vertices, the boundary points hit by extending an edge, and crossings of
    two edge lines inside the polygon.  This is the classical candidate set
    for full guards; it is not complete for half guards.
    """
    pts: set[Point] = set(poly.vertices)
    lines: set[Line] = set()
    for a, b in poly.edges():
        lines.add(_line(a, b))
        pts.update(_extension_hits(poly, a, b))
    for l1, l2 in combinations(lines, 2):
        p = _meet(l1, l2)
        if p is not None and poly.contains(p):
            pts.add(p)
    return [HalfGuard(p, d) for p in sorted(pts) for d in (Direction.LEFT, Direction.RIGHT)]


def witness_points(
    poly: Polygon,
    extra_lines: Sequence[tuple[Point, Point]] = (),
    limit: int = 5000,
    candidates: Sequence[HalfGuard] = (),
) -> list[Point]:
    """One interior point per face of the arrangement of edge lines and vertex verticals.

    Passing ``candidates`` also adds the line from every candidate position
    through every reflex vertex.  Visibility from those positions is then
    constant on each face, so covering the samples means covering ``poly``.
    """
    x0, y0, x1, y1 = poly.bbox()
    pad = max(x1 - x0, y1 - y0) + 1
    box = (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
    segs = list(poly.edges())
    lines: set[Line] = set()
    for a, b in poly.edges():
        lines.add(_line(a, b))
    for v in poly.vertices:
        lines.add(_line(v, Point(v.x, v.y + 1)))
    for a, b in extra_lines:
        lines.add(_line(a, b))
    reflex = [poly.vertices[i] for i in reflex_vertices(poly)]
    for p in sorted({g.position for g in candidates}):
        for r in reflex:
            if p != r:
                lines.add(_line(p, r))
    for ln in lines:
        seg = _clip_line(ln, box)
        if seg is not None:
            segs.append(seg)
    arr = Arrangement(segs)
    out = []
    for cid, s in enumerate(arr.samples):
        if arr.area2(cid) > 0 and poly.locate(s) is Location.INTERIOR:
            out.append(s)
            if len(out) > limit:
                raise OracleLimit(f"more than {limit} witness faces")
    return sorted(set(out))


def _clip_line(ln: Line, box) -> tuple[Point, Point] | None:
    bx0, by0, bx1, by1 = box
    p, q = _line_points(ln)
    corners = [Point(bx0, by0), Point(bx1, by0), Point(bx1, by1), Point(bx0, by1)]
    hits = []
    for i in range(4):
        c, d = corners[i], corners[(i + 1) % 4]
        h = line_intersection(p, q, c, d)
        if h is not None and bx0 <= h.x <= bx1 and by0 <= h.y <= by1:
            hits.append(h)
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def seed_witnesses(poly: Polygon) -> list[Point]:
    """Small starting witness set: vertices, edge midpoints, vertical-slab samples."""
    pts = set(poly.vertices)
    pts.update(midpoint(a, b) for a, b in poly.edges())
    x0, y0, x1, y1 = poly.bbox()
    segs = list(poly.edges())
    for v in poly.vertices:
        segs.append((Point(v.x, y0 - 1), Point(v.x, y1 + 1)))
    arr = Arrangement(segs)
    for cid, s in enumerate(arr.samples):
        if arr.area2(cid) > 0 and poly.locate(s) is Location.INTERIOR:
            pts.add(s)
    return sorted(pts)


# -- set cover ---------------------------------------------------------------


@dataclass
class CoverageMatrix:
    candidates: list[HalfGuard]
    witnesses: list[Point]
    sees: list[int]  # bitmask over witnesses, one per candidate
    regions: list = field(default_factory=list, repr=False)

    def row(self, c: int) -> list[bool]:
        m = self.sees[c]
        return [bool(m >> w & 1) for w in range(len(self.witnesses))]

    def add_witnesses(self, pts: Iterable[Point]) -> int:
        added = 0
        for p in pts:
            if p in self._index:
                continue
            w = len(self.witnesses)
            self.witnesses.append(p)
            self._index[p] = w
            for c, reg in enumerate(self.regions):
                if reg.contains(p):
                    self.sees[c] |= 1 << w
            added += 1
        return added

    def __post_init__(self) -> None:
        self._index = {p: i for i, p in enumerate(self.witnesses)}


def build_matrix(poly: Polygon, candidates: Sequence[HalfGuard], witnesses: Sequence[Point]) -> CoverageMatrix:
    regions = []
    keep = []
    for g in candidates:
        reg = half_visibility_polygon(g, poly)
        if reg.area == 0:
            continue
        keep.append(g)
        regions.append(reg)
    m = CoverageMatrix(keep, [], [0] * len(keep), regions)
    m.add_witnesses(witnesses)
    return m


def _popcount(x: int) -> int:
    return bin(x).count("1")


def min_cover(
    matrix: CoverageMatrix,
    k_max: int = DEFAULT_KMAX,
    timeout: float | None = None,
) -> list[int] | None:
    """Smallest set of candidate indices whose rows cover every witness.

    Branch and bound: branch on the witness with fewest covering candidates,
    prune with a disjoint-witness packing bound, seed with greedy.
    """
    nw = len(matrix.witnesses)
    full = (1 << nw) - 1
    sees = matrix.sees
    deadline = None if timeout is None else time.monotonic() + timeout
    if nw == 0:
        return []
    # drop candidates dominated by another (ties keep the lower index)
    order = sorted(range(len(sees)), key=lambda c: (-_popcount(sees[c]), c))
    kept: list[int] = []
    for c in order:
        s = sees[c]
        if s == 0:
            continue
        if any(s | sees[k] == sees[k] for k in kept):
            continue
        kept.append(c)
    covering: list[list[int]] = [[] for _ in range(nw)]
    for c in kept:
        s = sees[c]
        for w in range(nw):
            if s >> w & 1:
                covering[w].append(c)
    if any(not cs for cs in covering):
        return None

    best: list[int] | None = None
    # greedy upper bound
    unc = full
    greedy: list[int] = []
    while unc:
        c = max(kept, key=lambda k: (_popcount(sees[k] & unc), -k))
        greedy.append(c)
        unc &= ~sees[c]
    if len(greedy) <= k_max:
        best = greedy
    limit = len(best) if best is not None else k_max + 1

    def lower_bound(unc: int) -> int:
        # witnesses whose covering sets are pairwise disjoint each need their own guard
        lb = 0
        blocked = 0
        rest = unc
        while rest:
            w = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            mask = 0
            for c in covering[w]:
                mask |= 1 << c
            if mask & blocked:
                continue
            blocked |= mask
            lb += 1
        return lb

    calls = 0

    def search(unc: int, chosen: list[int]) -> None:
        nonlocal best, limit, calls
        calls += 1
        if deadline is not None and calls % 256 == 0 and time.monotonic() > deadline:
            raise OracleTimeout("oracle search timed out")
        if unc == 0:
            if len(chosen) < limit:
                best = list(chosen)
                limit = len(chosen)
            return
        if len(chosen) + lower_bound(unc) >= limit:
            return
        # most constrained witness
        wbest, fewest = -1, None
        rest = unc
        while rest:
            w = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            k = len(covering[w])
            if fewest is None or k < fewest:
                wbest, fewest = w, k
                if k == 1:
                    break
        opts = sorted(covering[wbest], key=lambda c: (-_popcount(sees[c] & unc), c))
        for c in opts:
            chosen.append(c)
            search(unc & ~sees[c], chosen)
            chosen.pop()

    search(full, [])
    if best is None or len(best) > k_max:
        return None
    return sorted(best)


# -- driver ------------------------------------------------------------------


@dataclass
class OracleResult:
    guards: list[HalfGuard]
    opt: int
    witnesses: list[Point]
    candidates: int
    rounds: int
    verified: bool


def solve(
    poly: Polygon,
    k_max: int = DEFAULT_KMAX,
    timeout: float | None = None,
    extra: Iterable[Point] = (),
    rich: bool = False,
    candidates: Sequence[HalfGuard] | None = None,
    witnesses: Sequence[Point] | None = None,
    max_rounds: int = 200,
) -> OracleResult | None:
    """Minimum half-guard cover over the candidate set, or None beyond ``k_max``."""
    if timeout is None:
        timeout = default_timeout()
    start = time.monotonic()
    cands = list(candidates) if candidates is not None else candidate_points(poly, extra=extra, rich=rich)
    wits = list(witnesses) if witnesses is not None else seed_witnesses(poly)
    matrix = build_matrix(poly, cands, wits)
    for rnd in range(1, max_rounds + 1):
        left = timeout - (time.monotonic() - start)
        if left <= 0:
            raise OracleTimeout("oracle timed out")
        pick = min_cover(matrix, k_max, timeout=left)
        if pick is None:
            return None
        guards = [matrix.candidates[c] for c in pick]
        rep = covers(guards, poly)
        if rep.covered:
            return OracleResult(guards, len(guards), list(matrix.witnesses), len(matrix.candidates), rnd, True)
        if matrix.add_witnesses(rep.samples) == 0:
            raise RuntimeError("witness refinement made no progress")
    raise OracleLimit(f"no verified cover after {max_rounds} refinement rounds")


def lower_bound_witnesses(poly: Polygon, points: Sequence[Point]) -> int:
    """Certify that ``points`` have pairwise disjoint visibility regions."""
    regions = [visibility_polygon(p, poly) for p in points]
    for i, j in combinations(range(len(points)), 2):
        area = Fraction(0)
        for a in regions[i].pieces:
            for b in regions[j].pieces:
                area += intersection_area(a.vertices, b.vertices)
        if area != 0:
            raise ValueError(f"witnesses {points[i]} and {points[j]} see a common region")
    return len(points)


def covers_witnesses(guards: Sequence[HalfGuard], poly: Polygon, pts: Sequence[Point]) -> bool:
    regs = [half_visibility_polygon(g, poly) for g in guards]
    return all(any(r.contains(p) for r in regs) for p in pts)
