"""Exact planar primitives.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this package
ever touches a float.  Points are plain named tuples so they hash and compare
cheaply, which the arrangement code relies on heavily.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Scalar = Fraction
Number = Union[int, str, Fraction]


def to_scalar(value: Number) -> Fraction:
    """Parse an int, a Fraction, a decimal string or a ``num/den`` string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(str(value).strip())


def format_scalar(s: Fraction) -> str:
    if s.denominator == 1:
        return str(s.numerator)
    return f"{s.numerator}/{s.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __repr__(self) -> str:
        return f"P({format_scalar(self.x)}, {format_scalar(self.y)})"


def pt(x: Number, y: Number) -> Point:
    return Point(to_scalar(x), to_scalar(y))


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Direction(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def opposite(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class GeometryError(ValueError):
    """Invalid geometric input (self-intersection, degenerate segment, ...)."""


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    v = cross(a, b, c)
    if v > 0:
        return Orientation.CCW
    if v < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if ``p`` lies on the closed segment ``ab``."""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise GeometryError(f"degenerate segment at {self.a}")


@dataclass(frozen=True)
class Overlap:
    """Collinear overlap of two segments."""

    a: Point
    b: Point


def _param(p: Point, a: Point, b: Point) -> Fraction:
    # parameter of p along ab, p assumed collinear
    if a.x != b.x:
        return (p.x - a.x) / (b.x - a.x)
    return (p.y - a.y) / (b.y - a.y)


def segments_intersect(s: Segment, t: Segment) -> Point | Overlap | None:
    """Classify the intersection of two closed segments exactly."""
    return intersect_segments(s.a, s.b, t.a, t.b)


def intersect_segments(a: Point, b: Point, c: Point, d: Point) -> Point | Overlap | None:
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return None
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    if d1 == 0 and d2 == 0:
        # collinear: overlap on the parameter line of ab
        tc, td = _param(c, a, b), _param(d, a, b)
        lo, hi = max(Fraction(0), min(tc, td)), min(Fraction(1), max(tc, td))
        if lo > hi:
            return None
        p, q = lerp(a, b, lo), lerp(a, b, hi)
        return p if p == q else Overlap(p, q)
    t = d1 / (d1 - d2)
    return lerp(a, b, t)


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """Intersection of the infinite lines ``ab`` and ``cd`` (None if parallel)."""
    den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
    if den == 0:
        return None
    t = ((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den
    return lerp(a, b, t)


def ray_segment_param(o: Point, d: Point, a: Point, b: Point) -> Fraction | None:
    """Smallest ``t >= 0`` with ``o + t*d`` on segment ``ab`` (d is a direction vector)."""
    ex, ey = b.x - a.x, b.y - a.y
    den = d.x * ey - d.y * ex
    wx, wy = a.x - o.x, a.y - o.y
    if den == 0:
        if wx * d.y - wy * d.x != 0:
            return None
        # collinear with the ray
        dd = d.x * d.x + d.y * d.y
        ta = (wx * d.x + wy * d.y) / dd
        tb = ((b.x - o.x) * d.x + (b.y - o.y) * d.y) / dd
        lo, hi = min(ta, tb), max(ta, tb)
        if hi < 0:
            return None
        return max(lo, Fraction(0))
    t = (wx * ey - wy * ex) / den
    s = (wx * d.y - wy * d.x) / den
    if t < 0 or s < 0 or s > 1:
        return None
    return t


def signed_area2(pts: Sequence[Point]) -> Fraction:
    """Twice the signed area (positive for counterclockwise rings)."""
    total = Fraction(0)
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


def point_in_ring(p: Point, ring: Sequence[Point]) -> Location:
    """Crossing-number test with explicit boundary detection."""
    n = len(ring)
    inside = False
    px, py = p.x, p.y
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if on_segment(p, a, b):
            return Location.BOUNDARY
        if (a.y > py) != (b.y > py):
            c = cross(a, b, p)
            if (c > 0) == (b.y > a.y):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def dedupe_ring(pts: Iterable[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def simplify_ring(pts: Iterable[Point]) -> list[Point]:
    """Drop repeated points and vertices lying strictly inside a straight run."""
    ring = dedupe_ring(pts)
    changed = True
    while changed and len(ring) >= 3:
        changed = False
        n = len(ring)
        for i in range(n):
            a, b, c = ring[i - 1], ring[i], ring[(i + 1) % n]
            if cross(a, b, c) == 0 and on_segment(b, a, c):
                del ring[i]
                changed = True
                break
    return ring


class Polygon:
    """Simple polygon stored as a counterclockwise ring of exact points."""

    __slots__ = ("vertices", "_area2")

    def __init__(self, vertices: Iterable[Point], check: bool = True) -> None:
        verts = [p if isinstance(p, Point) else Point(to_scalar(p[0]), to_scalar(p[1])) for p in vertices]
        verts = dedupe_ring(verts)
        if len(verts) < 3:
            raise GeometryError("a polygon needs at least 3 distinct vertices")
        a2 = signed_area2(verts)
        if a2 == 0:
            raise GeometryError("polygon has zero area")
        if a2 < 0:
            verts.reverse()
            a2 = -a2
        self.vertices: tuple[Point, ...] = tuple(verts)
        self._area2 = a2
        if check:
            bad = self_intersection(self.vertices)
            if bad is not None:
                raise GeometryError(f"polygon is not simple: edges {bad[0]} and {bad[1]} intersect")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i % len(self.vertices)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polygon):
            return NotImplemented
        return _canonical(self.vertices) == _canonical(other.vertices)

    def __hash__(self) -> int:
        return hash(_canonical(self.vertices))

    def __repr__(self) -> str:
        return f"Polygon({list(self.vertices)!r})"

    @property
    def area(self) -> Fraction:
        return self._area2 / 2

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def locate(self, p: Point) -> Location:
        return point_in_ring(p, self.vertices)

    def contains(self, p: Point) -> bool:
        """Closed containment."""
        return self.locate(p) is not Location.EXTERIOR

    def is_convex_vertex(self, i: int) -> bool:
        return cross(self[i - 1], self[i], self[i + 1]) > 0

    def is_reflex_vertex(self, i: int) -> bool:
        return cross(self[i - 1], self[i], self[i + 1]) < 0

    def translate(self, dx: Number, dy: Number) -> "Polygon":
        dx, dy = to_scalar(dx), to_scalar(dy)
        return Polygon([Point(p.x + dx, p.y + dy) for p in self.vertices], check=False)

    def mirror_y(self) -> "Polygon":
        return Polygon([Point(p.x, -p.y) for p in self.vertices], check=False)

    def mirror_x(self) -> "Polygon":
        return Polygon([Point(-p.x, p.y) for p in self.vertices], check=False)


def _canonical(verts: Sequence[Point]) -> tuple[Point, ...]:
    i = min(range(len(verts)), key=lambda k: verts[k])
    return tuple(verts[i:]) + tuple(verts[:i])


def self_intersection(verts: Sequence[Point]) -> tuple[int, int] | None:
    """Return a pair of offending edge indices, or None if the ring is simple."""
    n = len(verts)
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    boxes = [(min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y)) for a, b in edges]
    for i in range(n):
        a, b = edges[i]
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi[2] < bj[0] or bj[2] < bi[0] or bi[3] < bj[1] or bj[3] < bi[1]:
                continue
            c, d = edges[j]
            hit = intersect_segments(a, b, c, d)
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent and isinstance(hit, Point):
                shared = b if j == i + 1 else a
                if hit == shared:
                    continue
            if adjacent and n == 3:
                continue
            return i, j
    return None


def reflex_vertices(poly: Polygon) -> list[int]:
    return [i for i in range(len(poly)) if poly.is_reflex_vertex(i)]


def segment_in_polygon(a: Point, b: Point, poly: Polygon) -> bool:
    """True iff the closed segment ``ab`` lies in the closed polygon.

    Grazing contact with the boundary is allowed.
    """
    if a == b:
        return poly.contains(a)
    ts = {Fraction(0), Fraction(1)}
    dx, dy = b.x - a.x, b.y - a.y
    for c, d in poly.edges():
        hit = intersect_segments(a, b, c, d)
        if hit is None:
            continue
        if isinstance(hit, Overlap):
            ts.add(_param(hit.a, a, b))
            ts.add(_param(hit.b, a, b))
            continue
        # a proper crossing in the open interiors of both segments means leaving P
        if hit not in (c, d) and hit not in (a, b):
            if cross(c, d, a) != 0 and cross(c, d, b) != 0:
                return False
        ts.add(_param(hit, a, b))
    for v in poly.vertices:
        if cross(a, b, v) == 0 and on_segment(v, a, b):
            ts.add(_param(v, a, b))
    order = sorted(ts)
    if not poly.contains(a) or not poly.contains(b):
        return False
    for t0, t1 in zip(order, order[1:]):
        m = (t0 + t1) / 2
        if not poly.contains(Point(a.x + dx * m, a.y + dy * m)):
            return False
    return True


@dataclass(frozen=True)
class HalfGuard:
    position: Point
    dir: Direction

    def sees_halfplane(self, q: Point) -> bool:
        if self.dir is Direction.LEFT:
            return q.x <= self.position.x
        return q.x >= self.position.x

    def __repr__(self) -> str:
        return f"{self.dir.value}@{self.position!r}"


def half_sees(g: HalfGuard, q: Point, poly: Polygon) -> bool:
    """Direct point-to-point half visibility predicate (closed convention)."""
    return g.sees_halfplane(q) and segment_in_polygon(g.position, q, poly)


def read_polygon_text(text: str) -> Polygon:
    """Parse the polygon text format: a vertex count, then one ``x y`` per line."""
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise PolygonFormatError("empty polygon file", 1)
    lineno, first = rows[0]
    try:
        n = int(first)
    except ValueError:
        raise PolygonFormatError(f"expected vertex count, got {first!r}", lineno) from None
    if len(rows) - 1 != n:
        raise PolygonFormatError(f"expected {n} vertex lines, found {len(rows) - 1}", lineno)
    pts = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise PolygonFormatError(f"expected 'x y', got {line!r}", lineno)
        try:
            pts.append(Point(to_scalar(parts[0]), to_scalar(parts[1])))
        except (ValueError, ZeroDivisionError):
            raise PolygonFormatError(f"bad coordinate in {line!r}", lineno) from None
    try:
        return Polygon(pts)
    except GeometryError as exc:
        raise PolygonFormatError(str(exc), rows[0][0]) from None


def write_polygon_text(poly: Polygon, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(len(poly)))
    lines.extend(f"{format_scalar(p.x)} {format_scalar(p.y)}" for p in poly.vertices)
    return "\n".join(lines) + "\n"


class PolygonFormatError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
