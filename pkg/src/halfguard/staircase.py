"""Factor-2 approximation for opposing half guards in staircase polygons.

The work happens in a normal frame where the leftmost point of the polygon is
also its lowest.  Descending staircases are mirrored top to bottom first; that
reflection keeps every guard's direction, so mapping results back is just a
sign flip on y.

In the normal frame a top-left corner ``w`` sees exactly the part of P with
``x >= w.x`` and ``y <= w.y``, and a bottom-right corner ``d`` sees the part
with ``x <= d.x`` and ``y >= d.y``.  The witness chain alternates between the
two kinds of corner, always taking the first one that lies beyond the region
the previous witness sees.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .bounds import Algorithm, GuardSolution
from .classify import classify
from .geom import Direction, HalfGuard, Point, Polygon, on_segment
from .overlay import intersection_area
from .visibility import coverage_of_regions, covers, half_visibility_polygon, visibility_polygon


class StaircaseError(RuntimeError):
    """Raised when an intermediate claim of the construction fails on an input."""


def _flip(p: Point) -> Point:
    return Point(p.x, -p.y)


def is_ascending(poly: Polygon) -> bool:
    lo = min(poly.vertices, key=lambda p: (p.x, p.y))
    return lo.y == min(p.y for p in poly.vertices)


def normalize(poly: Polygon) -> tuple[Polygon, bool]:
    """Reflect a staircase so its leftmost point is lowest; report whether we did."""
    c = classify(poly)
    if not c.staircase:
        raise ValueError("input is not a staircase polygon")
    if is_ascending(poly):
        return poly, False
    return poly.mirror_y(), True


def _corners(poly: Polygon) -> tuple[list[Point], list[Point]]:
    """Top-left and bottom-right convex corners, each sorted from p_l toward p_u."""
    top_left, bottom_right = [], []
    v = poly.vertices
    n = len(v)
    for i in range(n):
        a, b, c = v[i - 1], v[i], v[(i + 1) % n]
        if not poly.is_convex_vertex(i):
            continue
        if a.x > b.x and c.y < b.y:
            top_left.append(b)
        elif a.x < b.x and c.y > b.y:
            bottom_right.append(b)
    return sorted(top_left), sorted(bottom_right)


@dataclass
class WitnessChain:
    witnesses: list[Point]
    # uncovered part of P after removing V(w_i), one entry per witness
    residual: list[list[Polygon]] = field(default_factory=list)
    flipped: bool = False

    def __len__(self) -> int:
        return len(self.witnesses)


def _cws_normal(poly: Polygon) -> list[Point]:
    top_left, bottom_right = _corners(poly)
    if not top_left:
        return []
    w = top_left[0]
    out = [w]
    upper = True
    while True:
        if upper:
            nxt = next((d for d in bottom_right if d.y > w.y), None)
        else:
            nxt = next((u for u in top_left if u.x > w.x), None)
        if nxt is None:
            return out
        out.append(nxt)
        w = nxt
        upper = not upper


def place_cws(poly: Polygon, check: bool = True) -> WitnessChain:
    frame, flipped = normalize(poly)
    ws = _cws_normal(frame)
    if flipped:
        ws = [_flip(w) for w in ws]
    regions = [visibility_polygon(w, poly) for w in ws]
    residual = [coverage_of_regions(r.rings, poly).uncovered for r in regions]
    if check:
        for (i, a), (j, b) in combinations(enumerate(regions), 2):
            if any(intersection_area(p.vertices, q.vertices) != 0 for p in a.pieces for q in b.pieces):
                raise StaircaseError(f"witnesses {i} and {j} see a common region")
    return WitnessChain(ws, residual, flipped)


def place_gcw(chain: WitnessChain) -> list[HalfGuard]:
    """Right guards on odd-numbered witnesses, Left guards on even-numbered ones."""
    return [
        HalfGuard(w, Direction.RIGHT if i % 2 == 0 else Direction.LEFT)
        for i, w in enumerate(chain.witnesses)
    ]


class ShortChain(enum.Enum):
    UPPER = "UpperHasTwoEdges"
    LOWER = "LowerHasTwoEdges"


@dataclass
class Stair:
    region: Polygon
    short_chain: ShortChain
    guard: HalfGuard


def _chains(piece: Polygon) -> tuple[list[Point], list[Point]]:
    v = list(piece.vertices)
    lo = v.index(min(v, key=lambda p: (p.x, p.y)))
    hi = v.index(max(v, key=lambda p: (p.x, p.y)))
    ring = v[lo:] + v[:lo]
    k = (hi - lo) % len(v)
    return ring[: k + 1], ring[k:] + ring[:1]


def _on_edge(p: Point, poly: Polygon, vertical: bool) -> bool:
    if p in poly.vertices:
        return True
    return any(on_segment(p, a, b) and (a.x == b.x) == vertical for a, b in poly.edges())


def as_stair(piece: Polygon, flipped: bool, host: Polygon | None = None) -> Stair:
    """Recognise ``piece`` as a stair and attach the guard that covers it.

    A rectangle is a stair both ways.  With ``host`` given (in the same frame as
    ``piece``), the Left guard is only used when it sits on a vertical edge of
    the host, so that it can later slide down to a vertex.
    """
    frame = piece.mirror_y() if flipped else piece
    c = classify(frame)
    if not c.staircase or not is_ascending(frame):
        raise StaircaseError(f"residual piece {piece!r} is not a staircase")
    lower, upper = _chains(frame)
    host_frame = None if host is None else (host.mirror_y() if flipped else host)
    low_pt = max(frame.vertices, key=lambda q: (q.x, -q.y))
    use_lower = len(lower) == 3 and (
        len(upper) != 3 or host_frame is None or _on_edge(low_pt, host_frame, vertical=True)
    )
    if use_lower:
        g = HalfGuard(low_pt, Direction.LEFT)
        kind = ShortChain.LOWER
    elif len(upper) == 3:
        p = min(frame.vertices, key=lambda q: (q.x, -q.y))
        g = HalfGuard(p, Direction.RIGHT)
        kind = ShortChain.UPPER
    else:
        raise StaircaseError(f"residual piece {piece!r} has no two-edge chain")
    if flipped:
        g = HalfGuard(_flip(g.position), g.dir)
    return Stair(piece, kind, g)


def extract_stairs(poly: Polygon, chain: WitnessChain, gcw: list[HalfGuard]) -> list[Stair]:
    pieces = covers(gcw, poly).uncovered
    stairs = [as_stair(p, chain.flipped, poly) for p in pieces]
    if len(stairs) > len(gcw):
        raise StaircaseError(f"{len(stairs)} stairs left for {len(gcw)} corner guards")
    return stairs


def place_gs(stairs: list[Stair]) -> list[HalfGuard]:
    return [s.guard for s in stairs]


def _slide(g: HalfGuard, frame: Polygon) -> HalfGuard:
    p = g.position
    if p in frame.vertices:
        return g
    for a, b in frame.edges():
        if on_segment(p, a, b):
            if a.x == b.x:
                return HalfGuard(min(a, b, key=lambda q: q.y), g.dir)
            return HalfGuard(min(a, b, key=lambda q: q.x), g.dir)
    raise StaircaseError(f"guard {g!r} is not on the boundary")


def slide_to_vertices(gs: list[HalfGuard], poly: Polygon, keep: list[HalfGuard] | None = None) -> list[HalfGuard]:
    """Move stair guards down vertical edges or left along horizontal ones.

    ``keep`` are the other guards of the solution; coverage of the whole set is
    re-checked after the move.
    """
    frame, flipped = normalize(poly)
    moved = []
    for g in gs:
        h = HalfGuard(_flip(g.position), g.dir) if flipped else g
        h = _slide(h, frame)
        moved.append(HalfGuard(_flip(h.position), h.dir) if flipped else h)
    if not covers(list(keep or []) + moved, poly).covered:
        raise StaircaseError("sliding stair guards to vertices lost coverage")
    return moved


@dataclass
class StaircaseRun:
    chain: WitnessChain
    gcw: list[HalfGuard]
    stairs: list[Stair]
    gs: list[HalfGuard]

    @property
    def guards(self) -> list[HalfGuard]:
        return self.gcw + self.gs


def run_staircase(poly: Polygon, vertex_guards: bool = False) -> StaircaseRun:
    chain = place_cws(poly)
    gcw = place_gcw(chain)
    for g, w in zip(gcw, chain.witnesses):
        if half_visibility_polygon(g, poly).area != visibility_polygon(w, poly).area:
            raise StaircaseError(f"corner guard at {w!r} sees less than its witness")
    stairs = extract_stairs(poly, chain, gcw)
    gs = place_gs(stairs)
    if vertex_guards:
        gs = slide_to_vertices(gs, poly, keep=gcw)
    return StaircaseRun(chain, gcw, stairs, gs)


def solve_staircase(poly: Polygon, vertex_guards: bool = False) -> GuardSolution:
    run = run_staircase(poly, vertex_guards)
    return GuardSolution(
        run.guards,
        Algorithm.STAIRCASE,
        2 * len(run.chain),
        notes=f"witnesses={len(run.chain)} stairs={len(run.stairs)}",
    )


__all__ = [
    "ShortChain",
    "Stair",
    "StaircaseError",
    "StaircaseRun",
    "WitnessChain",
    "extract_stairs",
    "normalize",
    "place_cws",
    "place_gcw",
    "place_gs",
    "run_staircase",
    "slide_to_vertices",
    "solve_staircase",
]
