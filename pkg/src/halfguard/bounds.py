"""Constructive guard placements behind the art gallery bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .classify import is_orthogonal, mountain_base
from .geom import (
    Direction,
    GeometryError,
    HalfGuard,
    Point,
    Polygon,
    cross,
    on_segment,
    ray_segment_param,
    simplify_ring,
)
from .visibility import covers


class Algorithm(enum.Enum):
    FISK_DOUBLE = "FiskDouble"
    CONVEX_PARTITION = "ConvexPartition"
    LSHAPE = "LShape"
    MOUNTAIN_CASES = "MountainCases"
    STAIRCASE = "Staircase2Approx"
    SPIRAL_DP = "SpiralDP"
    ORACLE = "Oracle"


@dataclass
class GuardSolution:
    guards: list[HalfGuard]
    algorithm: Algorithm
    bound: int
    notes: str = ""
    pieces: list[Polygon] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.guards)


def _both(p: Point) -> list[HalfGuard]:
    return [HalfGuard(p, Direction.LEFT), HalfGuard(p, Direction.RIGHT)]


# -- triangulation and 3-colouring --------------------------------------------------

def _in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def triangulate(poly: Polygon) -> list[tuple[int, int, int]]:
    """Ear-clipping triangulation; indices refer to ``poly.vertices``.

    Vertices where the boundary runs straight are left out; they never need a
    triangle of their own.
    """
    v = poly.vertices
    idx = [i for i in range(len(v)) if cross(v[i - 1], v[i], v[(i + 1) % len(v)]) != 0]
    tris = []
    while len(idx) > 3:
        m = len(idx)
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = v[i0], v[i1], v[i2]
            if cross(a, b, c) <= 0:
                continue
            if any(_in_triangle(v[j], a, b, c) for j in idx if j not in (i0, i1, i2)):
                continue
            tris.append((i0, i1, i2))
            del idx[k]
            break
        else:
            # only straight corners left between ears: drop one and go on
            k = next((k for k in range(m) if cross(v[idx[k - 1]], v[idx[k]], v[idx[(k + 1) % m]]) == 0), None)
            if k is None:
                raise GeometryError("ear clipping found no ear")
            del idx[k]
    tris.append(tuple(idx))  # type: ignore[arg-type]
    return tris


def three_color(tris: list[tuple[int, int, int]]) -> dict[int, int]:
    """Proper 3-colouring of a triangulation's vertices by walking the dual tree."""
    edge_owner: dict[frozenset, list[int]] = {}
    for t, tri in enumerate(tris):
        for k in range(3):
            edge_owner.setdefault(frozenset((tri[k], tri[(k + 1) % 3])), []).append(t)
    color: dict[int, int] = {}
    a, b, c = tris[0]
    color.update({a: 0, b: 1, c: 2})
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        tri = tris[t]
        for k in range(3):
            e = frozenset((tri[k], tri[(k + 1) % 3]))
            for u in edge_owner[e]:
                if u in seen:
                    continue
                seen.add(u)
                other = next(x for x in tris[u] if x not in e)
                used = {color[x] for x in e}
                color[other] = ({0, 1, 2} - used).pop()
                stack.append(u)
    return color


def fisk_double(poly: Polygon) -> GuardSolution:
    """A Left and a Right guard on every vertex of the smallest colour class."""
    color = three_color(triangulate(poly))
    classes: list[list[int]] = [[], [], []]
    for i, c in color.items():
        classes[c].append(i)
    best = min(classes, key=lambda cl: (len(cl), sorted(cl)))
    guards = [g for i in sorted(best) for g in _both(poly.vertices[i])]
    n = len(poly)
    return GuardSolution(guards, Algorithm.FISK_DOUBLE, 2 * (n // 3))


# -- convex partition ------------------------------------------------------------

def _first_boundary_hit(ring: list[Point], i: int) -> tuple[Point, int]:
    """Extend edge (i-1, i) past vertex i; return the hit and the index of the edge hit."""
    v = ring[i]
    prev = ring[i - 1]
    d = Point(v.x - prev.x, v.y - prev.y)
    n = len(ring)
    best: tuple[Fraction, int] | None = None
    for j in range(n):
        a, b = ring[j], ring[(j + 1) % n]
        if j == i or (j + 1) % n == i:
            continue
        t = ray_segment_param(v, d, a, b)
        if t is None or t <= 0:
            continue
        if best is None or t < best[0]:
            best = (t, j)
    if best is None:
        raise GeometryError("edge extension left the polygon")
    t, j = best
    return Point(v.x + d.x * t, v.y + d.y * t), j


def split_at(ring: list[Point], i: int, hit: Point, j: int) -> tuple[list[Point], list[Point]]:
    """Cut ``ring`` along the chord from vertex ``i`` to ``hit`` on edge ``j``."""
    n = len(ring)
    a, b = ring[j], ring[(j + 1) % n]
    if hit == b:
        j, hit_idx = (j + 1) % n, (j + 1) % n
    elif hit == a:
        hit_idx = j
    else:
        ring = ring[: j + 1] + [hit] + ring[j + 1:]
        if i > j:
            i += 1
        hit_idx = j + 1
        n += 1
    first, k = [], i
    while True:
        first.append(ring[k])
        if k == hit_idx:
            break
        k = (k + 1) % n
    second, k = [], hit_idx
    while True:
        second.append(ring[k])
        if k == i:
            break
        k = (k + 1) % n
    return simplify_ring(first), simplify_ring(second)


def convex_pieces(poly: Polygon) -> list[Polygon]:
    """Split at reflex vertices by extending their incoming edge, lowest index first."""
    out = []
    todo = [list(poly.vertices)]
    while todo:
        ring = todo.pop()
        n = len(ring)
        reflex = [i for i in range(n) if cross(ring[i - 1], ring[i], ring[(i + 1) % n]) < 0]
        if not reflex:
            out.append(Polygon(ring, check=False))
            continue
        i = reflex[0]
        hit, j = _first_boundary_hit(ring, i)
        a, b = split_at(ring, i, hit, j)
        todo.extend((a, b))
    return out


def _leftmost_right_guard(piece: Polygon) -> HalfGuard:
    p = min(piece.vertices, key=lambda q: (q.x, q.y))
    return HalfGuard(p, Direction.RIGHT)


def convex_partition_guards(poly: Polygon) -> GuardSolution:
    """One Right guard on the leftmost vertex of each convex piece."""
    pieces = convex_pieces(poly)
    r = sum(1 for i in range(len(poly)) if poly.is_reflex_vertex(i))
    guards = [_leftmost_right_guard(p) for p in pieces]
    return GuardSolution(guards, Algorithm.CONVEX_PARTITION, r + 1, pieces=pieces)


# -- L-shaped partition of orthogonal polygons ---------------------------------------

def _ray_hit(ring: list[Point], i: int, d: Point) -> tuple[Point, int]:
    n = len(ring)
    v = ring[i]
    best: tuple[Fraction, int] | None = None
    for j in range(n):
        if j == i or (j + 1) % n == i:
            continue
        t = ray_segment_param(v, d, ring[j], ring[(j + 1) % n])
        if t is not None and t > 0 and (best is None or t < best[0]):
            best = (t, j)
    if best is None:
        raise GeometryError("cut left the polygon")
    t, j = best
    return Point(v.x + d.x * t, v.y + d.y * t), j


def _canon(ring: list[Point]) -> tuple[Point, ...]:
    k = ring.index(min(ring))
    return tuple(ring[k:] + ring[:k])


def _reflex(ring: list[Point]) -> list[int]:
    n = len(ring)
    return [i for i in range(n) if cross(ring[i - 1], ring[i], ring[(i + 1) % n]) < 0]


@lru_cache(maxsize=4096)
def _best_partition(ring: tuple[Point, ...]) -> tuple[tuple[Point, ...], ...]:
    refl = _reflex(list(ring))
    if len(refl) <= 1:
        return (ring,)
    target = 1 + len(refl) // 2
    best: tuple[tuple[Point, ...], ...] | None = None
    lst = list(ring)
    n = len(lst)
    for i in refl:
        for nb in (lst[i - 1], lst[(i + 1) % n]):
            d = Point(lst[i].x - nb.x, lst[i].y - nb.y)
            hit, j = _ray_hit(lst, i, d)
            a, b = split_at(lst, i, hit, j)
            parts = _best_partition(_canon(a)) + _best_partition(_canon(b))
            if best is None or len(parts) < len(best):
                best = parts
                if len(best) <= target:
                    return best
    assert best is not None
    return best


def lshape_pieces(poly: Polygon) -> list[Polygon]:
    """Split an orthogonal polygon into rectangles and L-shapes.

    Every cut extends an edge through a reflex vertex; the cheapest
    combination is found by a memoised search, which stays small for the
    polygon sizes this package targets.
    """
    if not is_orthogonal(poly):
        raise ValueError("lshape_guards needs an orthogonal polygon")
    return [Polygon(list(r), check=False) for r in _best_partition(_canon(list(poly.vertices)))]


def _lshape_guard(piece: Polygon) -> HalfGuard:
    ring = list(piece.vertices)
    refl = _reflex(ring)
    if refl:
        v = ring[(refl[0] + 3) % len(ring)]
    else:
        v = min(ring, key=lambda p: (p.x, p.y))
    lo = min(p.x for p in ring)
    return HalfGuard(v, Direction.RIGHT if v.x == lo else Direction.LEFT)


def lshape_guards(poly: Polygon) -> GuardSolution:
    pieces = lshape_pieces(poly)
    bound = len(poly) // 4
    if len(pieces) > bound:
        raise RuntimeError(f"L-shape partition used {len(pieces)} pieces, above the bound {bound}")
    return GuardSolution([_lshape_guard(p) for p in pieces], Algorithm.LSHAPE, bound, pieces=pieces)


# -- monotone mountains ----------------------------------------------------------------

@dataclass
class MountainCase:
    vertex: Point
    left_edges: int
    right_edges: int
    case: int
    guards: list[HalfGuard]


def _mountain_frame(poly: Polygon) -> tuple[Polygon, bool]:
    """Return the polygon with its base segment on top, and whether it was flipped."""
    i = mountain_base(poly)
    if i is None:
        raise ValueError("not a monotone mountain")
    v = poly.vertices
    base_y = v[i].y
    if all(p.y <= base_y for p in v):
        return poly, False
    return poly.mirror_y(), True


def _lower_chain(poly: Polygon) -> list[Point]:
    v = list(poly.vertices)
    start = v.index(min(v))
    ring = v[start:] + v[:start]
    right = max(range(len(ring)), key=lambda k: ring[k].x)
    return ring[: right + 1]  # ccw from the leftmost vertex walks the lower chain first


def mountain_cases(poly: Polygon) -> list[MountainCase]:
    """Case analysis for every convex vertex strictly inside the lower chain.

    Each stretch between consecutive convex vertices is split at its highest
    vertex (the left one on ties).  With both sides of ``v`` at least two
    edges long, Right and Left guards go on the roof above ``v``.  When only
    one side is long, a single guard looks toward it from the roof above the
    top of the short side.  When both are short, a Right guard sits above the
    top of the left side.
    """
    chain = _lower_chain(poly)
    top = chain[0].y
    n = len(chain)
    convex = [0] + [k for k in range(1, n - 1) if cross(chain[k - 1], chain[k], chain[k + 1]) > 0] + [n - 1]
    split = []
    for a, b in zip(convex, convex[1:]):
        split.append(max(range(a, b + 1), key=lambda k: (chain[k].y, -k)))
    out = []
    for m in range(1, len(convex) - 1):
        k = convex[m]
        left_top, right_top = split[m - 1], split[m]
        le, re = k - left_top, right_top - k
        v = chain[k]
        if le >= 2 and re >= 2:
            h = Point(v.x, top)
            out.append(MountainCase(v, le, re, 1, _both(h)[::-1]))
        elif re >= 2:
            out.append(MountainCase(v, le, re, 2, [HalfGuard(Point(chain[left_top].x, top), Direction.RIGHT)]))
        elif le >= 2:
            out.append(MountainCase(v, le, re, 2, [HalfGuard(Point(chain[right_top].x, top), Direction.LEFT)]))
        else:
            out.append(MountainCase(v, le, re, 3, [HalfGuard(Point(chain[left_top].x, top), Direction.RIGHT)]))
    return out


def _unflip(guards: list[HalfGuard], flipped: bool) -> list[HalfGuard]:
    if not flipped:
        return guards
    return [HalfGuard(Point(g.position.x, -g.position.y), g.dir) for g in guards]


def _mountain_bound(n: int, r: int) -> int:
    if 2 * r < n:
        return r + 1
    if 4 * r <= 3 * n:
        return n // 2
    return 2 * (n - r - 2)


def mountain_guards(poly: Polygon) -> GuardSolution:
    frame, flipped = _mountain_frame(poly)
    guards: list[HalfGuard] = []
    for case in mountain_cases(frame):
        for g in case.guards:
            if g not in guards:
                guards.append(g)
    n = len(poly)
    r = sum(1 for i in range(n) if poly.is_reflex_vertex(i))
    bound = _mountain_bound(n, r)
    notes = ""
    if len(guards) > bound:
        guards = prune_redundant(guards, frame)
        notes = "pruned"
    return GuardSolution(_unflip(guards, flipped), Algorithm.MOUNTAIN_CASES, bound, notes=notes)


def prune_redundant(guards: list[HalfGuard], poly: Polygon) -> list[HalfGuard]:
    """Drop guards, last first, as long as the rest still cover ``poly``."""
    keep = list(guards)
    for g in reversed(guards):
        rest = [h for h in keep if h != g]
        if rest and covers(rest, poly).covered:
            keep = rest
    return keep


def mountain_high_reflex_guards(poly: Polygon) -> GuardSolution:
    """Right and Left guards on the roof above every convex vertex but the two ends."""
    frame, flipped = _mountain_frame(poly)
    chain = _lower_chain(frame)
    top = chain[0].y
    guards = []
    for k in range(1, len(chain) - 1):
        if cross(chain[k - 1], chain[k], chain[k + 1]) > 0:
            guards += _both(Point(chain[k].x, top))[::-1]
    n = len(poly)
    c = sum(1 for i in range(n) if poly.is_convex_vertex(i))
    return GuardSolution(_unflip(guards, flipped), Algorithm.MOUNTAIN_CASES, 2 * (c - 2))
