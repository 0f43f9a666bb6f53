"""Generators for the lower-bound and test polygon families.

Every generator is deterministic given its parameters (random families take a
seed).  Coordinates are small rationals; the scheme for each family is
described in the docstring of its builder.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .geom import Direction, GeometryError, HalfGuard, Point, Polygon, lerp, pt
from .classify import classify, reflex_run


class Family(enum.Enum):
    MON_LOWER_REFLEX = "MonLowerReflex"
    MON_LOWER_CONVEX = "MonLowerConvex"
    ORTH_LOWER = "OrthLower"
    MOUNTAIN_MEDIUM = "MountainMedium"
    MOUNTAIN_HIGH_REFLEX = "MountainHighReflex"
    TWO_GUARDABLE = "TwoGuardable"
    RANDOM_STAIRCASE = "RandomStaircase"
    RANDOM_SPIRAL = "RandomSpiral"
    RANDOM_MOUNTAIN = "RandomMountain"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.replace("-", "").replace("_", "").lower()
        for f in cls:
            if f.value.lower() == key:
                return f
        raise ValueError(f"unknown family {name!r}")


@dataclass(frozen=True)
class FamilySpec:
    """Which polygon to build.

    ``n`` is the size parameter: vertex count for most families, ``r`` for
    MonLowerConvex, the convex-vertex count ``c`` for MountainHighReflex, the
    step count for RandomStaircase and the reflex count for RandomSpiral.
    TwoGuardable ignores ``n`` and reads its corridor length from ``length``.
    """

    family: Family
    n: int = 0
    seed: int = 0
    eps: Fraction = Fraction(1, 100)
    length: Fraction = Fraction(100)

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(str(self.family)))
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "length", Fraction(self.length))


@dataclass
class WitnessSet:
    """Points certifying a lower bound.

    ``full`` says whether the points have pairwise disjoint full visibility
    regions; otherwise they only certify the half-guard argument of the family
    and ``bound`` is the count that argument claims.
    """

    points: list[Point]
    bound: int
    full: bool


# -- monotone polygons with many reflex vertices -----------------------------

def _mlr_parts(n: int):
    """Split ``n`` into pockets ``k`` and the variant flags.

    ``n = 3k + 1`` is the full construction.  For ``n = 3k`` the dip above
    the first pocket is dropped, and ``n = 3k + 2`` gets one spare reflex
    vertex low on the right wall of the last pocket.
    """
    if n < 6:
        raise ValueError("MonLowerReflex needs n >= 6")
    k, rem = divmod(n - 1, 3)
    if rem == 2:  # n = 3(k+1)
        return k + 1, True, False
    return k, False, rem == 1


def mon_lower_reflex(n: int) -> Polygon:
    """x-monotone polygon with ``k`` downward pockets under a convex roof.

    The roof is the parabola ``y = (x-k)^2`` sampled at the odd abscissae
    ``2i-1`` (the reflex vertices ``u_i``), with the leftmost and rightmost
    vertices at ``x = 0`` and ``x = 2k``.  Pocket ``i`` bottoms out at
    ``c_i = (2i-1, -10)``; the reflex tops ``r_i`` sit at ``x = 2i``, a
    quarter unit under the roof, so a guard near one top cannot look past the
    dip ``u_i`` into the far side of the pocket.
    """
    k, drop_first, spare = _mlr_parts(n)
    F = Fraction
    f = lambda x: (x - k) ** 2
    lower = [Point(F(0), f(F(0)))]
    for i in range(1, k + 1):
        lower.append(Point(F(2 * i - 1), F(-10)))
        if i < k:
            x = F(2 * i)
            lower.append(Point(x, (f(x - 1) + f(x + 1)) / 2 - F(1, 4)))
    right_end = Point(F(2 * k), f(F(2 * k)))
    if spare:
        s = lerp(lower[-1], right_end, F(1, 10))
        lower.append(Point(s.x - F(1, 100), s.y))
    lower.append(right_end)
    upper = []
    for i in range(k, 0, -1):
        if drop_first and i == 1:
            continue
        x = F(2 * i - 1)
        upper.append(Point(x, f(x)))
    return Polygon(lower + upper)


def _mlr_pockets(poly: Polygon) -> list[tuple[Point, Point, Point]]:
    """(left top, bottom, right top) for each pocket.

    Bottoms sit at ``y = -10``, pocket tops and chain ends above ``y = 0``;
    the spare wall vertex (negative y, above the bottom) is skipped.
    """
    v = poly.vertices
    tops = sorted(p for p in v if p.y > 0)
    out = []
    for c in sorted((p for p in v if p.y == -10), key=lambda p: p.x):
        left = max((p for p in tops if p.x < c.x), key=lambda p: (p.x, -p.y))
        right = min((p for p in tops if p.x > c.x), key=lambda p: (p.x, p.y))
        out.append((left, c, right))
    return out


def mon_lower_reflex_witnesses(n: int, eps: Fraction) -> WitnessSet:
    k, drop_first, _ = _mlr_parts(n)
    poly = mon_lower_reflex(n)
    pts = []
    for left, c, right in _mlr_pockets(poly):
        pts.append(lerp(left, c, eps))
        pts.append(lerp(right, c, eps))
    return WitnessSet(pts, 2 * k - (1 if drop_first else 0), full=False)


def mon_lower_reflex_guards(n: int) -> list[HalfGuard]:
    """Two guards per pocket: Right at its left top, Left at its right top."""
    k, _, _ = _mlr_parts(n)
    poly = mon_lower_reflex(n)
    guards = []
    for left, c, right in _mlr_pockets(poly):
        guards.append(HalfGuard(left, Direction.RIGHT))
        guards.append(HalfGuard(right, Direction.LEFT))
    return guards


# -- few reflex vertices: tall peaks over a flat floor -----------------------

_PEAK = Fraction(10)


def mon_lower_convex(r: int) -> Polygon:
    """Floor ``[0, 2r] x {0}`` with ``r+1`` peaks ``(2j, 10)`` and valleys ``(2j+1, 1)``.

    The valleys are the only reflex vertices; ``n = 2r + 3``.
    """
    if r < 1:
        raise ValueError("MonLowerConvex needs r >= 1")
    top = []
    for j in range(r, -1, -1):
        top.append(Point(Fraction(2 * j), _PEAK))
        if j > 0:
            top.append(Point(Fraction(2 * j - 1), Fraction(1)))
    return Polygon([pt(0, 0), pt(2 * r, 0), *top])


def mon_lower_convex_guards(r: int) -> list[HalfGuard]:
    """One Right guard at the left floor corner of each convex slab between valleys."""
    xs = [0] + [2 * j - 1 for j in range(1, r + 1)]
    return [HalfGuard(pt(x, 0), Direction.RIGHT) for x in xs]


def mon_lower_convex_witnesses(r: int) -> WitnessSet:
    return WitnessSet([Point(Fraction(2 * j), _PEAK) for j in range(r + 1)], r + 1, full=False)


# -- orthogonal comb ------------------------------------------------------------

_TOOTH = Fraction(10)


def orth_lower(n: int) -> Polygon:
    """Comb with ``m = n/4`` unit-wide teeth of height 10 on a unit-high base.

    Tooth ``j`` spans ``[2j, 2j+1]``; gaps are one unit wide.
    """
    if n < 4 or n % 4:
        raise ValueError("OrthLower needs n divisible by 4")
    m = n // 4
    top = []
    for j in range(m - 1, -1, -1):
        top += [Point(Fraction(2 * j + 1), _TOOTH), Point(Fraction(2 * j), _TOOTH)]
        if j > 0:
            top += [pt(2 * j, 1), pt(2 * j - 1, 1)]
    return Polygon([pt(0, 0), pt(2 * m - 1, 0), *top])


def orth_lower_guards(n: int) -> list[HalfGuard]:
    """A Right guard on the floor under the left side of every tooth."""
    return [HalfGuard(pt(2 * j, 0), Direction.RIGHT) for j in range(n // 4)]


def orth_lower_witnesses(n: int) -> WitnessSet:
    """Top corners of the teeth; each sees its own tooth and a sliver of base only."""
    m = n // 4
    pts = [Point(Fraction(2 * j), _TOOTH) for j in range(m - 1)]
    pts.append(Point(Fraction(2 * m - 1), _TOOTH))
    return WitnessSet(pts, m, full=True)


# -- monotone mountains ----------------------------------------------------------

_SKY = Fraction(10)


def _mountain(inner: list[int], ends: tuple[int, int] = (0, 0), rng: random.Random | None = None) -> Polygon:
    """Monotone mountain under the segment ``y = 10``.

    Valleys sit at ``x = 2, 6, 10, ...``.  Between two valleys ``inner[j]``
    reflex vertices lie on a downward parabola (a hump) whose ends are at
    height 2, above every valley.  ``ends`` gives the reflex counts on the
    descents from the two ends of the roof to the outer valleys; those lie on
    parabolas flat at the roof and steep at the valley.
    """
    F = Fraction
    m = len(inner) + 1
    width = F(4 * m)
    vy = [F(rng.randint(0, 4), 4) if rng else F(0) for _ in range(m)]
    peaks = [F(rng.randint(5, 7)) if rng else F(6) for _ in inner]
    ring = [Point(F(0), _SKY)]

    def descent(t: int, x0: Fraction, x1: Fraction, y1: Fraction) -> list[Point]:
        span = x1 - x0
        out = []
        for i in range(1, t + 1):
            u = F(i, t + 1)
            out.append(Point(x0 + span * u, _SKY - (_SKY - y1) * u * u))
        return out

    ring += descent(ends[0], F(0), F(2), vy[0])
    for j in range(m):
        ring.append(Point(F(2 + 4 * j), vy[j]))
        if j < m - 1:
            t = inner[j]
            mid = F(4 + 4 * j)
            for i in range(1, t + 1):
                d = F(4 * i, t + 1) - 2
                ring.append(Point(mid + d, peaks[j] - (peaks[j] - 2) * d * d / 4))
    tail = descent(ends[1], width, width - 2, vy[-1])
    ring += [Point(p.x, p.y) for p in reversed(tail)]
    ring.append(Point(width, _SKY))
    return Polygon(ring)


def mountain_medium(n: int, seed: int = 0) -> Polygon:
    """Mountain with one to three reflex vertices between consecutive valleys.

    Uses the fewest valleys that fit ``n``; the seed spreads the reflex
    vertices over the humps.
    """
    m = max(2, -(-(n + 1) // 4))
    r = n - m - 2
    if not (m - 1 <= r <= 3 * (m - 1)) or not (n <= 2 * r <= 3 * n // 2):
        raise ValueError(f"MountainMedium has no layout with n = {n}")
    rng = random.Random(seed)
    inner = [1] * (m - 1)
    for _ in range(r - (m - 1)):
        j = rng.choice([i for i in range(m - 1) if inner[i] < 3])
        inner[j] += 1
    return _mountain(inner)


def _high_reflex_t(c: int) -> int:
    return 3 * c // (c - 1) + 1


def mountain_high_reflex(c: int) -> Polygon:
    """Mountain with ``c`` convex vertices and long reflex chains on every descent.

    Each of the ``c - 1`` chains carries ``t`` reflex vertices, the least ``t``
    with ``r > 3n/4``.
    """
    if c < 3:
        raise ValueError("MountainHighReflex needs c >= 3")
    t = _high_reflex_t(c)
    return _mountain([t] * (c - 3), (t, t))


def mountain_high_reflex_placement(c: int) -> list[HalfGuard]:
    poly = mountain_high_reflex(c)
    out = []
    for v in poly.vertices:
        if v.y < _SKY and v.x % 4 == 2 and poly.is_convex_vertex(poly.vertices.index(v)):
            h = Point(v.x, _SKY)
            out += [HalfGuard(h, Direction.RIGHT), HalfGuard(h, Direction.LEFT)]
    return out


def random_mountain(n: int, seed: int = 0) -> Polygon:
    """Random mountain with ``n`` vertices and chains of zero to three reflex vertices."""
    if n < 3:
        raise ValueError("RandomMountain needs n >= 3")
    rng = random.Random(seed)
    lo = max(1, -(-(n - 5) // 4))
    m = rng.randint(lo, max(lo, min(n - 2, lo + 3)))
    r = n - m - 2
    slots = [0] * (m + 1)
    for _ in range(r):
        j = rng.choice([i for i in range(m + 1) if slots[i] < 3])
        slots[j] += 1
    return _mountain(slots[1:-1], (slots[0], slots[-1]), rng)


# -- two-guardable polygon whose guards avoid every edge extension -------------

_TG_STEP = Fraction(1, 8)


def _tg_layout(length: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """(room half-height, guard x offset, niche depth) for corridor length 4."""
    L = Fraction(length)
    if L < 10:
        raise ValueError("TwoGuardable needs length >= 10")
    h = 1 + _TG_STEP
    gx = (L + 2) / (1 + h) - 2  # the Right guard sits at (-gx, 0)
    reach = gx - 1  # horizontal distance from the guard to the near niche wall
    depth = Fraction(2) / (2 * reach + 1)
    return h, gx, depth


def two_guardable(length: Fraction = Fraction(100)) -> Polygon:
    """Two long rooms joined by a corridor with a pair of mirrored niches.

    The corridor is ``[-2, 2] x [-1, 1]``; the rooms reach out to
    ``x = -length`` and ``x = length`` and stand 1/8 taller than the corridor
    on both sides.  The niches ``[-1, 1] x [1, 1 + d]`` and its mirror sit in
    the middle of the corridor, ``d`` shrinking with the length.  The steps
    where the rooms widen hide a sliver from anything inside the corridor,
    which forces the Right guard into the left room and the Left guard into
    the right room.  Neither can then see a whole niche, and finishing the
    niches jointly keeps both guards strictly between the extension lines.
    The designated guards sit where the sight lines from each corridor corner
    to the opposite far room corner cross.
    """
    L = Fraction(length)
    h, _, d = _tg_layout(L)
    half = [
        (-L, -h), (-2, -h), (-2, -1), (-1, -1), (-1, -1 - d),
        (1, -1 - d), (1, -1), (2, -1), (2, -h), (L, -h),
    ]
    ring = [pt(x, y) for x, y in half] + [pt(-x, -y) for x, y in half]
    return Polygon(ring)


def two_guardable_guards(length: Fraction = Fraction(100)) -> list[HalfGuard]:
    _, gx, _ = _tg_layout(length)
    return [HalfGuard(Point(-gx, Fraction(0)), Direction.RIGHT), HalfGuard(Point(gx, Fraction(0)), Direction.LEFT)]


def two_guardable_marks(length: Fraction = Fraction(100)) -> list[Point]:
    """Where the two guards' sight lines meet on the niche floors and the room walls."""
    h, gx, d = _tg_layout(length)
    nx = -1 + (gx - 1) * d  # Right guard's first visible point on the upper niche floor
    sx = 2 + (gx + 2) * _TG_STEP  # Right guard's first visible point past the upper right step
    return [Point(nx, 1 + d), Point(-nx, -1 - d), Point(sx, h), Point(-sx, -h)]


# -- random staircases and spirals ---------------------------------------------

def random_staircase(k: int, seed: int = 0) -> Polygon:
    """Staircase on the lattice ``[0, 3k]^2`` with ``k`` steps on each chain.

    Both chains run from ``(0, 0)`` to ``(3k, 3k)``; the upper one starts
    upwards, the lower one starts to the right.  ``n = 4k``.
    """
    if k < 1:
        raise ValueError("RandomStaircase needs k >= 1")
    rng = random.Random(seed)
    g = 3 * k
    for _ in range(1000):
        ux = sorted(rng.sample(range(1, g), k - 1))
        uy = sorted(rng.sample(range(1, g), k - 1)) + [g]
        lx = sorted(rng.sample(range(1, g), k - 1)) + [g]
        ly = sorted(rng.sample(range(1, g), k - 1))
        lower = [pt(0, 0)]
        for i in range(k):
            lower.append(pt(lx[i], ly[i - 1] if i else 0))
            if i < k - 1:
                lower.append(pt(lx[i], ly[i]))
        upper = [pt(g, g)]
        for i in range(k - 1, -1, -1):
            upper.append(pt(ux[i - 1] if i else 0, uy[i]))
            if i > 0:
                upper.append(pt(ux[i - 1], uy[i - 1]))
        try:
            poly = Polygon(lower + upper)
        except GeometryError:
            continue
        if len(poly) == 4 * k and classify(poly).staircase:
            return poly
    raise RuntimeError("could not draw a staircase")  # pragma: no cover


def _rat(x: float, q: int = 1000) -> Fraction:
    return Fraction(round(x * q), q)


def random_spiral(nr: int, seed: int = 0, n: int | None = None, vertical: bool = False) -> Polygon:
    """Annular sector: ``nr`` reflex vertices on the inner arc, convex ones outside.

    Coordinates are floats rounded to thousandths, then checked exactly.
    ``n`` (total vertex count) is drawn from the seed when omitted.  Vertical
    edges are avoided unless ``vertical`` is set, in which case the first cap
    is made vertical on purpose.
    """
    if nr < 0:
        raise ValueError("RandomSpiral needs nr >= 0")
    rng = random.Random(seed)
    for _ in range(1000):
        sweep = math.radians(rng.uniform(120, min(300, 170 * (nr + 1))))
        ri = rng.uniform(0.3, 0.5)
        m_min = max(2, math.ceil(sweep / math.radians(110)) + 1)
        m = (n - nr - 2) if n is not None else rng.randint(m_min, max(m_min, 12 - nr))
        if m < m_min:
            raise ValueError(f"RandomSpiral cannot fit nr={nr} into n={n}")
        t0 = -math.pi / 2 if vertical else rng.uniform(0, 2 * math.pi)

        def ang(i: int, count: int, jitter: float) -> float:
            base = i / (count - 1)
            if 0 < i < count - 1:
                base += rng.uniform(-jitter, jitter) / (count - 1)
            return t0 + sweep * base

        outer = [(math.cos(a), math.sin(a)) for a in (ang(i, m, 0.3) for i in range(m))]
        inner = [(ri * math.cos(a), ri * math.sin(a)) for a in (ang(i, nr + 2, 0.3) for i in range(nr + 2))]
        ring = [Point(_rat(x), _rat(y)) for x, y in outer + inner[::-1]]
        if vertical:
            ring[0] = Point(Fraction(0), ring[0].y)
            ring[-1] = Point(Fraction(0), ring[-1].y)
        try:
            poly = Polygon(ring)
        except GeometryError:
            continue
        if len(poly) != m + nr + 2:
            continue
        run = reflex_run(poly)
        if run is None or len(run) != nr:
            continue
        has_vertical = any(a.x == b.x for a, b in poly.edges())
        if has_vertical != vertical:
            continue
        return poly
    raise RuntimeError("could not draw a spiral")  # pragma: no cover


# -- dispatch ----------------------------------------------------------------------

def generate(spec: FamilySpec) -> Polygon:
    f, n = spec.family, spec.n
    if f is Family.MON_LOWER_REFLEX:
        return mon_lower_reflex(n)
    if f is Family.MON_LOWER_CONVEX:
        return mon_lower_convex(n)
    if f is Family.ORTH_LOWER:
        return orth_lower(n)
    if f is Family.MOUNTAIN_MEDIUM:
        return mountain_medium(n, spec.seed)
    if f is Family.MOUNTAIN_HIGH_REFLEX:
        return mountain_high_reflex(n)
    if f is Family.TWO_GUARDABLE:
        return two_guardable(spec.length)
    if f is Family.RANDOM_STAIRCASE:
        return random_staircase(n, spec.seed)
    if f is Family.RANDOM_SPIRAL:
        return random_spiral(n, spec.seed)
    return random_mountain(n, spec.seed)


def designated_guards(spec: FamilySpec) -> list[HalfGuard]:
    """The guard set the family's upper-bound argument places."""
    f, n = spec.family, spec.n
    if f is Family.MON_LOWER_REFLEX:
        return mon_lower_reflex_guards(n)
    if f is Family.MON_LOWER_CONVEX:
        return mon_lower_convex_guards(n)
    if f is Family.ORTH_LOWER:
        return orth_lower_guards(n)
    if f is Family.MOUNTAIN_HIGH_REFLEX:
        return mountain_high_reflex_placement(n)
    if f is Family.TWO_GUARDABLE:
        return two_guardable_guards(spec.length)
    poly = generate(spec)
    if f in (Family.MOUNTAIN_MEDIUM, Family.RANDOM_MOUNTAIN):
        from .bounds import mountain_guards

        return mountain_guards(poly).guards
    if f is Family.RANDOM_STAIRCASE:
        from .staircase import solve_staircase

        return solve_staircase(poly).guards
    from .spiral import spiral_dp

    return spiral_dp(poly).guards


def witness_set(spec: FamilySpec) -> WitnessSet:
    f, n = spec.family, spec.n
    if f is Family.MON_LOWER_REFLEX:
        return mon_lower_reflex_witnesses(n, spec.eps)
    if f is Family.MON_LOWER_CONVEX:
        return mon_lower_convex_witnesses(n)
    if f is Family.ORTH_LOWER:
        return orth_lower_witnesses(n)
    if f is Family.TWO_GUARDABLE:
        return WitnessSet(two_guardable_marks(spec.length), 2, full=False)
    if f is Family.RANDOM_STAIRCASE:
        from .staircase import place_cws

        w = place_cws(generate(spec)).witnesses
        return WitnessSet(w, len(w), full=True)
    raise ValueError(f"{f.value} is not a lower-bound family")
