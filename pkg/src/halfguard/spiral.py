"""Dynamic program for opposing half guards in spiral polygons.

A spiral has one chain of convex vertices (walked clockwise from ``u`` to
``u'``) and one chain of reflex vertices (walked counterclockwise between the
same two vertices).  Guards are only ever placed on the convex chain.

Progress is tracked by a frontier chord from a point ``p`` on the reflex
chain to a point ``q`` on the convex chain.  Everything behind the chord (the
side that contains ``u``) is known to be covered.  Transitions are generated
by the seven placement rules of the recursion and accepted only after an exact
check that the guards they add cover the strip between the old and the new
chord, so every returned guard set covers the polygon by construction.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import Algorithm, GuardSolution
from .classify import reflex_run
from .geom import (
    Direction,
    HalfGuard,
    Location,
    Point,
    Polygon,
    format_scalar,
    intersect_segments,
    on_segment,
    ray_segment_param,
    segment_in_polygon,
    signed_area2,
    simplify_ring,
)
from .visibility import VisibilityRegion, coverage_of_regions, covers, half_visibility_polygon

UP = Point(Fraction(0), Fraction(1))
DOWN = Point(Fraction(0), Fraction(-1))


class SpiralError(ValueError):
    pass


class CornerKind(enum.Enum):
    LEFT = "LeftCorner"
    RIGHT = "RightCorner"


class Chain:
    """Polyline with an exact order on the points lying on it."""

    def __init__(self, pts: Sequence[Point]) -> None:
        self.pts = list(pts)

    def __len__(self) -> int:
        return len(self.pts)

    def key(self, p: Point) -> tuple[int, Fraction] | None:
        pts = self.pts
        last = len(pts) - 2
        for k in range(len(pts) - 1):
            a, b = pts[k], pts[k + 1]
            if p == a:
                return (k, Fraction(0))
            if p == b and k == last:
                return (k, Fraction(1))
            if on_segment(p, a, b):
                d = (b.x - a.x) if b.x != a.x else (b.y - a.y)
                return (k, ((p.x - a.x) if b.x != a.x else (p.y - a.y)) / d)
        return None

    def contains(self, p: Point) -> bool:
        return self.key(p) is not None

    def between(self, lo: Point, hi: Point) -> list[Point]:
        """Chain vertices strictly between ``lo`` and ``hi``."""
        klo, khi = self.key(lo), self.key(hi)
        out = []
        for k, v in enumerate(self.pts):
            kv = (k, Fraction(0)) if k < len(self.pts) - 1 else (k - 1, Fraction(1))
            if klo < kv < khi:
                out.append(v)
        return out


@dataclass
class SpiralDecomposition:
    poly: Polygon
    convex_chain: list[Point]  # u = u_1 ... u_nc = u', clockwise
    reflex_chain: list[Point]  # v_0 = u, v_1 ... v_nr, counterclockwise
    corners: list[tuple[int, CornerKind]] = field(default_factory=list)
    inner_corners: list[int] = field(default_factory=list)

    @property
    def u(self) -> Point:
        return self.convex_chain[0]

    @property
    def u_prime(self) -> Point:
        return self.convex_chain[-1]

    @property
    def nr(self) -> int:
        return len(self.reflex_chain) - 1

    def edge(self, i: int) -> tuple[Point, Point]:
        """``e_i = [v_{i-1}, v_i]``; index ``nr + 1`` is the closing edge into ``u'``."""
        path = self.reflex_path
        return path[i - 1], path[i]

    @property
    def reflex_path(self) -> list[Point]:
        return self.reflex_chain + [self.u_prime]

    @property
    def corner_points(self) -> list[Point]:
        return [self.convex_chain[k] for k, _ in self.corners]


def _side(a: Point, v: Point, b: Point) -> int:
    """+1 when both neighbours lie right of the vertical through v, -1 left, 0 otherwise."""
    if a.x > v.x and b.x > v.x:
        return 1
    if a.x < v.x and b.x < v.x:
        return -1
    return 0


def decompose_spiral(poly: Polygon, allow_vertical: bool = False) -> SpiralDecomposition:
    run = reflex_run(poly)
    if run is None:
        raise SpiralError("not a spiral polygon")
    if not allow_vertical and any(a.x == b.x for a, b in poly.edges()):
        raise SpiralError("spiral has a vertical edge; pass allow_vertical to accept it")
    v = list(poly.vertices)
    n = len(v)
    if run:
        iu, iu2 = (run[0] - 1) % n, (run[-1] + 1) % n
    else:
        iu = v.index(min(v))
        iu2 = (iu + 1) % n
    reflex = [v[iu]] + [v[i] for i in run]
    convex = []
    k = iu
    while True:
        convex.append(v[k])
        if k == iu2:
            break
        k = (k - 1) % n
    corners = []
    for j, c in enumerate(convex):
        i = v.index(c)
        s = _side(v[i - 1], c, v[(i + 1) % n])
        if s:
            corners.append((j, CornerKind.LEFT if s > 0 else CornerKind.RIGHT))
    inner = [j for j, i in enumerate(run, start=1) if _side(v[i - 1], v[i], v[(i + 1) % n])]
    return SpiralDecomposition(poly, convex, reflex, corners, inner)


# -- ray operations -------------------------------------------------------------------

def _first_hit(poly: Polygon, o: Point, d: Point) -> Point | None:
    """First boundary point hit by the ray from ``o`` that runs through the interior."""
    best = None
    for a, b in poly.edges():
        t = ray_segment_param(o, d, a, b)
        if t is not None and t > 0 and (best is None or t < best):
            best = t
    if best is None:
        return None
    mid = Point(o.x + d.x * best / 2, o.y + d.y * best / 2)
    if poly.locate(mid) is not Location.INTERIOR:
        return None
    return Point(o.x + d.x * best, o.y + d.y * best)


class SpiralOps:
    """The ray operations and chain bookkeeping for one decomposed spiral."""

    def __init__(self, dec: SpiralDecomposition) -> None:
        self.dec = dec
        self.poly = dec.poly
        self.convex = Chain(dec.convex_chain)
        self.reflex = Chain(dec.reflex_path)
        self._vis: dict[HalfGuard, VisibilityRegion] = {}

    # chain helpers
    def ckey(self, p: Point):
        return self.convex.key(p)

    def rkey(self, p: Point):
        return self.reflex.key(p)

    def edge_index(self, p: Point) -> int:
        """Index ``i`` of the reflex edge ``e_i`` whose half-open span holds ``p``."""
        k, t = self.rkey(p)
        return k + 1 if t < 1 else k + 2

    def forward(self, g: Point) -> Direction:
        """Direction of a forward guard at convex-chain point ``g``."""
        k, _ = self.ckey(g)
        a, b = self.convex.pts[k], self.convex.pts[k + 1]
        return Direction.RIGHT if b.x > a.x else Direction.LEFT

    def backward(self, g: Point) -> Direction:
        return self.forward(g).opposite

    def vis(self, g: HalfGuard) -> VisibilityRegion:
        if g not in self._vis:
            self._vis[g] = half_visibility_polygon(g, self.poly)
        return self._vis[g]

    # the four ray operations
    def ext(self, i: int) -> Point | None:
        a, b = self.dec.edge(i)
        hit = _first_hit(self.poly, b, Point(b.x - a.x, b.y - a.y))
        return hit if hit is not None and self.convex.contains(hit) else None

    def _vertical(self, p: Point) -> list[Point]:
        out = []
        for d in (UP, DOWN):
            hit = _first_hit(self.poly, p, d)
            if hit is not None:
                out.append(hit)
        return out

    def drop(self, p: Point) -> Point | None:
        for hit in self._vertical(p):
            if self.reflex.contains(hit):
                return hit
        return None

    def up(self, p: Point) -> Point | None:
        hits = [h for h in self._vertical(p) if self.convex.contains(h)]
        if not hits:
            return None
        return max(hits, key=self.ckey)

    def last_seen_vertex(self, g: HalfGuard) -> int | None:
        region = self.vis(g)
        seen = [k for k, v in enumerate(self.reflex.pts) if region.contains(v)]
        return max(seen) if seen else None

    def spp(self, p: Point) -> Point | None:
        g = HalfGuard(p, self.forward(p))
        k = self.last_seen_vertex(g)
        if k is None or k == 0:
            return None
        v = self.reflex.pts[k]
        if k == len(self.reflex.pts) - 1:
            return v
        if v == p:
            return None
        hit = _first_hit(self.poly, v, Point(v.x - p.x, v.y - p.y))
        return hit if hit is not None and self.convex.contains(hit) else None

    def ix(self, g: HalfGuard, start: int = 1) -> int:
        """First index ``i >= start`` whose edge ``e_i`` the guard does not see completely."""
        region = self.vis(g)
        nr = self.dec.nr
        i = max(start, 1)
        while i <= nr:
            a, b = self.dec.edge(i)
            if covered_prefix(a, b, [p.vertices for p in region.pieces]) < 1:
                return i
            i += 1
        return nr + 1


def _inside_any(p: Point, rings: Sequence[Sequence[Point]]) -> bool:
    from .geom import point_in_ring

    return any(point_in_ring(p, r) is not Location.EXTERIOR for r in rings)


def covered_prefix(a: Point, b: Point, rings: Sequence[Sequence[Point]]) -> Fraction:
    """Largest ``t`` with the segment from ``a`` to ``a + t(b - a)`` inside the union of ``rings``.

    Returns -1 when ``a`` itself is outside.
    """
    if not _inside_any(a, rings):
        return Fraction(-1)
    if a == b:
        return Fraction(1)
    dx, dy = b.x - a.x, b.y - a.y
    use_x = dx != 0

    def param(p: Point) -> Fraction:
        return (p.x - a.x) / dx if use_x else (p.y - a.y) / dy

    ts = {Fraction(0), Fraction(1)}
    for r in rings:
        m = len(r)
        for j in range(m):
            hit = intersect_segments(a, b, r[j], r[(j + 1) % m])
            if hit is None:
                continue
            if isinstance(hit, Point):
                ts.add(param(hit))
            else:
                ts.add(param(hit.a))
                ts.add(param(hit.b))
    order = sorted(ts)
    reach = Fraction(0)
    for t0, t1 in zip(order, order[1:]):
        m = (t0 + t1) / 2
        if not _inside_any(Point(a.x + dx * m, a.y + dy * m), rings):
            break
        reach = t1
    return reach


# -- candidate positions ----------------------------------------------------------------

class Origin(enum.Enum):
    CORNER = "Corner"
    EXT = "ExtOfEdge"
    UP = "UpOfVertex"
    SPP = "SppChain"
    END = "ChainEnd"


@dataclass
class CandidateSet:
    positions: list[Point]
    provenance: dict[Point, tuple[Origin, int]]

    def __len__(self) -> int:
        return len(self.positions)


def build_candidates(dec: SpiralDecomposition, ops: SpiralOps | None = None, limit: int = 4) -> CandidateSet:
    """Corners, edge extensions and vertical lifts, closed under repeated ``spp``.

    ``limit`` is the constant ``c`` of the ``c * n**2`` size check.
    """
    ops = ops or SpiralOps(dec)
    prov: dict[Point, tuple[Origin, int]] = {}

    def add(p: Point | None, why: tuple[Origin, int]) -> bool:
        if p is None or p in prov:
            return False
        prov[p] = why
        return True

    add(dec.u, (Origin.END, 0))
    add(dec.u_prime, (Origin.END, 1))
    for k, _ in dec.corners:
        add(dec.convex_chain[k], (Origin.CORNER, k))
    for i in range(1, dec.nr + 1):
        add(ops.ext(i), (Origin.EXT, i))
    for j in range(1, dec.nr + 1):
        add(ops.up(dec.reflex_chain[j]), (Origin.UP, j))
    n = len(dec.poly)
    cap = limit * n * n
    todo = list(prov)
    while todo:
        p = todo.pop()
        s = ops.spp(p)
        if add(s, (Origin.SPP, len(prov))):
            todo.append(s)
        if len(prov) > cap:
            raise SpiralError(f"candidate set grew past {cap}")
    positions = sorted(prov, key=ops.ckey)
    return CandidateSet(positions, prov)


# -- dynamic program ------------------------------------------------------------------

CASE_FALLBACK = 0


@dataclass
class Step:
    case: int
    guards: list[HalfGuard]
    p: Point
    q: Point


@dataclass
class DPEntry:
    value: int | None  # None when no admissible continuation exists
    step: Step | None = None


def _corner_guard(dec: SpiralDecomposition, c: Point) -> HalfGuard:
    kind = dict((dec.convex_chain[k], kd) for k, kd in dec.corners)[c]
    return HalfGuard(c, Direction.RIGHT if kind is CornerKind.LEFT else Direction.LEFT)


class SpiralDP:
    """Memoised recursion over frontier chords ``(p, q)``."""

    def __init__(self, poly: Polygon, allow_vertical: bool = False, max_states: int = 20000) -> None:
        self.poly = poly
        self.dec = decompose_spiral(poly, allow_vertical)
        self.ops = SpiralOps(self.dec)
        self.cands = build_candidates(self.dec, self.ops)
        self.max_states = max_states
        self.table: dict[tuple[Point, Point], DPEntry] = {}
        self._rings: dict[tuple[Point, Point], list[Point]] = {}
        self.admission_checks = 0

    # frontier geometry
    def done_ring(self, p: Point, q: Point) -> list[Point]:
        if (p, q) not in self._rings:
            rp, cp = self.ops.reflex.pts, self.ops.convex.pts
            kp, _ = self.ops.rkey(p)
            kq, _ = self.ops.ckey(q)
            ring = simplify_ring(rp[: kp + 1] + [p, q] + cp[kq:0:-1])
            if len(ring) < 3 or signed_area2(ring) <= 0:
                ring = []
            self._rings[(p, q)] = ring
        return self._rings[(p, q)]

    def done_area(self, p: Point, q: Point) -> Fraction:
        r = self.done_ring(p, q)
        return signed_area2(r) / 2 if r else Fraction(0)

    def _cutters(self, p: Point, q: Point, guards: Iterable[HalfGuard]) -> list[Sequence[Point]]:
        rings: list[Sequence[Point]] = []
        old = self.done_ring(p, q)
        if old:
            rings.append(old)
        for g in guards:
            rings.extend(piece.vertices for piece in self.ops.vis(g).pieces)
        return rings

    def admits(self, p: Point, q: Point, p2: Point | None, q2: Point | None, guards: list[HalfGuard]) -> bool:
        """Exact check that ``guards`` cover everything between chord pq and chord p2q2."""
        if p2 is None or q2 is None:
            return False
        k1, k2 = self.ops.rkey(p2), self.ops.ckey(q2)
        if k1 is None or k2 is None or k1 < self.ops.rkey(p) or k2 < self.ops.ckey(q):
            return False
        new = self.done_ring(p2, q2)
        if not new or signed_area2(new) <= 2 * self.done_area(p, q):
            return False
        if not segment_in_polygon(p2, q2, self.poly):
            return False
        self.admission_checks += 1
        rep = coverage_of_regions(self._cutters(p, q, guards), Polygon(new, check=False))
        return rep.covered

    def maximal_frontiers(self, p: Point, q: Point, guards: list[HalfGuard]) -> list[tuple[Point, Point]]:
        """Furthest chords reachable once ``guards`` are added, tried in two orders."""
        rings = self._cutters(p, q, guards)

        def walk(chain: Chain, start: Point) -> Point:
            k, _ = chain.key(start)
            cur = start
            for j in range(k, len(chain) - 1):
                b = chain.pts[j + 1]
                t = covered_prefix(cur, b, rings)
                if t < 1:
                    t = max(t, Fraction(0))
                    return Point(cur.x + (b.x - cur.x) * t, cur.y + (b.y - cur.y) * t)
                cur = b
            return cur

        pmax = walk(self.ops.reflex, p)
        qmax = walk(self.ops.convex, q)
        ps = [pmax] + self.ops.reflex.between(p, pmax)[::-1][:2]
        inner_q = [b for b in self.cands.positions if self.ops.ckey(q) < self.ops.ckey(b) < self.ops.ckey(qmax)]
        inner_q += self.ops.convex.between(q, qmax)
        qs = [qmax] + sorted(set(inner_q), key=self.ops.ckey, reverse=True)[:3]
        found: list[tuple[Point, Point]] = []
        for order in ((ps, qs, False), (qs, ps, True)):
            outer, inner, swap = order
            hit = None
            for a in outer:
                for b in inner:
                    p2, q2 = (b, a) if swap else (a, b)
                    if (p2, q2) in found or not self.admits(p, q, p2, q2, guards):
                        continue
                    hit = (p2, q2)
                    break
                if hit:
                    break
            if hit and hit not in found:
                found.append(hit)
        return found

    # transitions
    def _frontier_after(self, g: HalfGuard, i: int) -> tuple[Point, Point | None]:
        i2 = self.ops.ix(g, i)
        return self.ops.reflex.pts[i2 - 1], self.ops.spp(g.position)

    def transitions(self, p: Point, q: Point):
        """Yield ``(case, guards, preferred frontier)`` for the seven placement rules."""
        ops, dec = self.ops, self.dec
        i = ops.edge_index(p)
        kq = ops.ckey(q)
        corner = next((c for c in dec.corner_points if ops.ckey(c) >= kq), None)
        gc = _corner_guard(dec, corner) if corner is not None else None

        def before_corner(g: Point) -> bool:
            return corner is None or ops.ckey(g) < ops.ckey(corner)

        if gc is not None and ops.vis(gc).contains(p) and ops.vis(gc).contains(q):
            yield 1, [gc], self._frontier_after(gc, i)
        if 1 <= i <= dec.nr:
            ge = ops.ext(i)
            if ge is not None and before_corner(ge):
                gb = HalfGuard(ge, ops.backward(ge))
                if ops.vis(gb).contains(q):
                    d = ops.drop(ge)
                    if d is not None:
                        yield 2, [gb], (d, ge)
                    elif gc is not None:
                        yield 3, [gb, gc], self._frontier_after(gc, i)
            vi = dec.reflex_path[i]
            if not segment_in_polygon(vi, q, self.poly):
                gs = ops.spp(q)
                if gs is not None and before_corner(gs):
                    gb = HalfGuard(gs, ops.backward(gs))
                    d = ops.drop(gs)
                    if d is not None:
                        yield 4, [gb], (d, gs)
                    elif gc is not None:
                        yield 5, [gb, gc], self._frontier_after(gc, i)
        up = ops.up(p) if p != dec.u else None
        if up is not None and kq < ops.ckey(up):
            gf = HalfGuard(q, ops.forward(q))
            yield 6, [gf], self._frontier_after(gf, i)
        if up is not None and ops.ckey(up) < kq:
            gf = HalfGuard(up, ops.forward(up))
            yield 7, [gf], self._frontier_after(gf, i)

    def _fallback(self, p: Point, q: Point):
        spots = set(self.cands.positions) | set(self.dec.convex_chain) | {q}
        for b in sorted(spots, key=self.ops.ckey):
            for d in (Direction.LEFT, Direction.RIGHT):
                yield CASE_FALLBACK, [HalfGuard(b, d)], (None, None)

    def solve(self, p: Point, q: Point) -> DPEntry:
        key = (p, q)
        if key in self.table:
            return self.table[key]
        if len(self.table) >= self.max_states:
            raise SpiralError(f"DP table passed {self.max_states} states")
        if self.done_area(p, q) == self.poly.area:
            self.table[key] = DPEntry(0)
            return self.table[key]
        self.table[key] = DPEntry(None)  # guards against cycles while recursing
        best = self._best(p, q, self.transitions(p, q))
        if best.value is None:
            best = self._best(p, q, self._fallback(p, q))
        self.table[key] = best
        return best

    def _best(self, p: Point, q: Point, moves) -> DPEntry:
        best = DPEntry(None)
        for case, guards, (p2, q2) in moves:
            options = [(p2, q2)] if self.admits(p, q, p2, q2, guards) else self.maximal_frontiers(p, q, guards)
            for p2, q2 in options:
                sub = self.solve(p2, q2)
                if sub.value is None:
                    continue
                val = sub.value + len(guards)
                if best.value is None or val < best.value:
                    best = DPEntry(val, Step(case, guards, p2, q2))
        return best

    def guards(self) -> list[HalfGuard]:
        p = q = self.dec.u
        out: list[HalfGuard] = []
        entry = self.solve(p, q)
        if entry.value is None:
            raise SpiralError("no admissible guard sequence found")
        while entry.step is not None:
            out.extend(g for g in entry.step.guards if g not in out)
            p, q = entry.step.p, entry.step.q
            entry = self.table[(p, q)]
        return out

    def dump(self) -> list[dict]:
        def pt(p: Point) -> list[str]:
            return [format_scalar(p.x), format_scalar(p.y)]

        rows = []
        for (p, q), e in self.table.items():
            rows.append({
                "i": self.ops.edge_index(p),
                "p": pt(p),
                "q": pt(q),
                "value": e.value,
                "case": e.step.case if e.step else None,
                "guards": [[*pt(g.position), g.dir.value] for g in e.step.guards] if e.step else [],
                "next": [pt(e.step.p), pt(e.step.q)] if e.step else None,
            })
        return rows


def spiral_dp(poly: Polygon, allow_vertical: bool = False, dump_path: str | None = None) -> GuardSolution:
    dec = decompose_spiral(poly, allow_vertical)
    n = len(poly)
    if dec.nr == 0:
        right = max(poly.vertices, key=lambda v: (v.x, v.y))
        return GuardSolution([HalfGuard(right, Direction.LEFT)], Algorithm.SPIRAL_DP, 2 * (n // 3), notes="convex")
    dp = SpiralDP(poly, allow_vertical)
    guards = dp.guards()
    if dump_path is not None:
        with open(dump_path, "w") as fh:
            json.dump(dp.dump(), fh, indent=1)
    if not covers(guards, poly).covered:
        raise SpiralError("DP guard set does not cover the polygon")
    notes = f"states={len(dp.table)} candidates={len(dp.cands)}"
    return GuardSolution(guards, Algorithm.SPIRAL_DP, 2 * (n // 3), notes=notes)
