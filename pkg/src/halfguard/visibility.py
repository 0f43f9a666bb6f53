"""Full and half visibility regions, and exact coverage checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .geom import (
    Direction,
    GeometryError,
    HalfGuard,
    Location,
    Point,
    Polygon,
    cross,
    line_intersection,
    on_segment,
    ray_segment_param,
    signed_area2,
    simplify_ring,
)
from .overlay import _angle_cmp, residue

_AXES = (
    Point(Fraction(1), Fraction(0)),
    Point(Fraction(0), Fraction(1)),
    Point(Fraction(-1), Fraction(0)),
    Point(Fraction(0), Fraction(-1)),
)
_ORIGIN = Point(Fraction(0), Fraction(0))


@dataclass
class VisibilityRegion:
    """Visibility region of ``source``.

    ``pieces`` normally holds one star-shaped polygon.  A half guard sitting on a
    reflex vertex can see two wedges that only meet at the guard; those come back
    as two pieces.  An empty list means the region has zero area.
    """

    source: Point
    dir: Direction | None
    pieces: list[Polygon] = field(default_factory=list)

    @property
    def region(self) -> Polygon:
        if len(self.pieces) != 1:
            raise ValueError(f"visibility region has {len(self.pieces)} pieces")
        return self.pieces[0]

    @property
    def area(self) -> Fraction:
        return sum((p.area for p in self.pieces), Fraction(0))

    def contains(self, q: Point) -> bool:
        if q == self.source:
            return True
        return any(p.locate(q) is not Location.EXTERIOR for p in self.pieces)

    @property
    def rings(self) -> list[tuple[Point, ...]]:
        return [p.vertices for p in self.pieces]


@dataclass
class CoverageReport:
    covered: bool
    uncovered: list[Polygon]
    uncovered_area: Fraction
    # one point strictly inside each uncovered face; used to refine witness sets
    samples: list[Point] = field(default_factory=list)


def _critical_directions(g: Point, poly: Polygon) -> list[Point]:
    dirs = [Point(v.x - g.x, v.y - g.y) for v in poly.vertices if v != g]
    dirs.extend(_AXES)
    cmp = _angle_cmp(_ORIGIN)
    dirs.sort(key=cmp_to_key(cmp))
    out: list[Point] = []
    for d in dirs:
        if out and cmp(out[-1], d) == 0:
            continue
        out.append(d)
    return out


def _sector(g: Point, da: Point, db: Point, edges) -> tuple[Point, Point] | None:
    """Far boundary of the open sector between two consecutive critical rays."""
    dm = Point(da.x + db.x, da.y + db.y)
    best_t = None
    best_e = None
    for c, d in edges:
        t = ray_segment_param(g, dm, c, d)
        if t is None or t <= 0:
            continue
        if best_t is None or t < best_t:
            best_t, best_e = t, (c, d)
    if best_e is None:
        return None
    return best_t, best_e  # type: ignore[return-value]


def _fan(g: Point, poly: Polygon, dir: Direction | None) -> list[list[Point]]:
    if not poly.contains(g):
        raise GeometryError(f"guard {g} lies outside the polygon")
    edges = poly.edges()
    dirs = _critical_directions(g, poly)
    m = len(dirs)
    if dir is None:
        pairs = [(dirs[k], dirs[(k + 1) % m]) for k in range(m)]
    else:
        start = _AXES[3] if dir is Direction.RIGHT else _AXES[1]
        stop = _AXES[1] if dir is Direction.RIGHT else _AXES[3]
        cmp = _angle_cmp(_ORIGIN)
        k = next(i for i, d in enumerate(dirs) if cmp(d, start) == 0)
        pairs = []
        while cmp(dirs[k % m], stop) != 0:
            pairs.append((dirs[k % m], dirs[(k + 1) % m]))
            k += 1
    spans: list[tuple[Point, Point] | None] = []
    for da, db in pairs:
        hit = _sector(g, da, db, edges)
        if hit is None:
            spans.append(None)
            continue
        t, (c, d) = hit
        dm = Point(da.x + db.x, da.y + db.y)
        probe = Point(g.x + dm.x * t / 2, g.y + dm.y * t / 2)
        if poly.locate(probe) is not Location.INTERIOR:
            spans.append(None)
            continue
        ha = line_intersection(g, Point(g.x + da.x, g.y + da.y), c, d)
        hb = line_intersection(g, Point(g.x + db.x, g.y + db.y), c, d)
        spans.append((ha, hb))
    if dir is None and all(s is not None for s in spans):
        ring: list[Point] = []
        for ha, hb in spans:  # type: ignore[misc]
            ring.extend((ha, hb))
        return [ring]
    # rotate so that an invisible gap (or the half-plane edge) comes first
    if dir is None:
        k = spans.index(None)
        spans = spans[k + 1:] + spans[:k + 1]
    runs: list[list[Point]] = []
    cur: list[Point] = []
    for s in spans:
        if s is None:
            if cur:
                runs.append(cur)
                cur = []
            continue
        cur.extend(s)
    if cur:
        runs.append(cur)
    return [[g, *run] for run in runs]


def _region(g: Point, poly: Polygon, dir: Direction | None) -> VisibilityRegion:
    pieces = []
    for ring in _fan(g, poly, dir):
        r = simplify_ring(ring)
        if len(r) >= 3 and signed_area2(r) > 0:
            pieces.append(Polygon(r, check=False))
    return VisibilityRegion(source=g, dir=dir, pieces=pieces)


def visibility_polygon(g: Point, poly: Polygon) -> VisibilityRegion:
    """Exact visibility region of a point under the closed-segment convention."""
    return _region(g, poly, None)


def half_visibility_polygon(guard: HalfGuard, poly: Polygon) -> VisibilityRegion:
    return _region(guard.position, poly, guard.dir)


def covers(guards: Sequence[HalfGuard], poly: Polygon) -> CoverageReport:
    """Exact coverage verdict; zero-area residue counts as covered."""
    cutters = []
    for g in guards:
        cutters.extend(p.vertices for p in half_visibility_polygon(g, poly).pieces)
    return coverage_of_regions(cutters, poly)


def coverage_of_regions(rings: Sequence[Sequence[Point]], poly: Polygon) -> CoverageReport:
    ov = residue(poly.vertices, rings)
    area = ov.area
    if area == 0:
        return CoverageReport(True, [], Fraction(0))
    samples = [
        ov.arr.samples[cid]
        for cid, sel in enumerate(ov.selected)
        if sel and ov.arr.area2(cid) > 0
    ]
    return CoverageReport(False, ov.polygons(), area, samples)


def is_boundary_edge(a: Point, b: Point, poly: Polygon) -> bool:
    """True if segment ``ab`` lies on one edge of ``poly``."""
    for c, d in poly.edges():
        if on_segment(a, c, d) and on_segment(b, c, d):
            return True
    return False


def windows(region: VisibilityRegion, poly: Polygon) -> list[tuple[Point, Point]]:
    """Edges of the region that do not run along the polygon boundary."""
    out = []
    for piece in region.pieces:
        for a, b in piece.edges():
            if not is_boundary_edge(a, b, poly):
                out.append((a, b))
    return out


def classify_window(w: tuple[Point, Point], source: Point, poly: Polygon) -> str:
    """'v' for the vertical window through the guard, 'r' otherwise."""
    a, b = w
    if a.x == b.x == source.x:
        return "v"
    return "r"


__all__ = [
    "CoverageReport",
    "VisibilityRegion",
    "classify_window",
    "coverage_of_regions",
    "covers",
    "half_visibility_polygon",
    "visibility_polygon",
    "windows",
]
