import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfguard.families import FamilySpec, generate
from halfguard.geom import Direction, HalfGuard, Polygon, pt
from halfguard.oracle import solve
from halfguard.overlay import intersection_area
from halfguard.staircase import (
    ShortChain,
    StaircaseError,
    as_stair,
    extract_stairs,
    normalize,
    place_cws,
    place_gcw,
    run_staircase,
    slide_to_vertices,
    solve_staircase,
)
from halfguard.visibility import covers, half_visibility_polygon, visibility_polygon

RECT = Polygon([pt(0, 0), pt(3, 0), pt(3, 1), pt(0, 1)])
TWO_STEPS = Polygon([pt(*c) for c in [(0, 0), (3, 0), (3, 2), (4, 2), (4, 4), (1, 4), (1, 1), (0, 1)]])


def staircase(k, seed, mirror=False):
    poly = generate(FamilySpec("RandomStaircase", k, seed=seed))
    return poly.mirror_y() if mirror else poly


def test_rectangle_needs_one_witness_and_no_stairs():
    chain = place_cws(RECT)
    assert len(chain) == 1
    gcw = place_gcw(chain)
    assert half_visibility_polygon(gcw[0], RECT).area == RECT.area
    assert extract_stairs(RECT, chain, gcw) == []


def test_two_steps():
    chain = place_cws(TWO_STEPS)
    assert chain.witnesses == [pt(0, 1), pt(4, 2)]
    gcw = place_gcw(chain)
    assert [g.dir for g in gcw] == [Direction.RIGHT, Direction.LEFT]
    stairs = extract_stairs(TWO_STEPS, chain, gcw)
    assert len(stairs) == 1
    assert stairs[0].short_chain is ShortChain.LOWER
    assert stairs[0].guard == HalfGuard(pt(3, 1), Direction.LEFT)
    assert covers(gcw + [stairs[0].guard], TWO_STEPS).covered


def test_stair_with_two_edge_upper_chain_gets_right_guard():
    # lower chain has three steps, upper chain goes straight up then right
    piece = Polygon([pt(*c) for c in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]])
    stair = as_stair(piece, False)
    assert stair.short_chain is ShortChain.UPPER
    assert stair.guard == HalfGuard(pt(0, 2), Direction.RIGHT)
    assert half_visibility_polygon(stair.guard, piece).area == piece.area


def test_slide_down_the_vertical_edge():
    chain = place_cws(TWO_STEPS)
    gcw = place_gcw(chain)
    gs = [s.guard for s in extract_stairs(TWO_STEPS, chain, gcw)]
    assert slide_to_vertices(gs, TWO_STEPS, keep=gcw) == [HalfGuard(pt(3, 0), Direction.LEFT)]


def test_slide_along_a_horizontal_edge():
    g = HalfGuard(pt(2, 4), Direction.RIGHT)
    moved = slide_to_vertices([g], TWO_STEPS, keep=[HalfGuard(pt(4, 2), Direction.LEFT), HalfGuard(pt(0, 0), Direction.RIGHT)])
    assert moved == [HalfGuard(pt(1, 4), Direction.RIGHT)]


def test_non_staircase_rejected():
    with pytest.raises(ValueError):
        normalize(Polygon([pt(0, 0), pt(4, 0), pt(1, 3)]))


def test_sliding_that_loses_coverage_fails_loudly():
    with pytest.raises(StaircaseError):
        slide_to_vertices([HalfGuard(pt(2, 4), Direction.LEFT)], TWO_STEPS)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**4), st.booleans(), st.booleans())
def test_corner_and_stair_guards_cover(k, seed, mirror, vertices):
    poly = staircase(k, seed, mirror)
    run = run_staircase(poly, vertex_guards=vertices)
    assert covers(run.guards, poly).covered
    assert len(run.stairs) <= len(run.gcw) == len(run.chain)
    for g, w in zip(run.gcw, run.chain.witnesses):
        assert half_visibility_polygon(g, poly).area == visibility_polygon(w, poly).area
    if vertices:
        assert all(g.position in poly.vertices for g in run.gs)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**4))
def test_witness_views_pairwise_disjoint(k, seed):
    poly = staircase(k, seed)
    regions = [visibility_polygon(w, poly) for w in place_cws(poly, check=False).witnesses]
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            for a in regions[i].pieces:
                for b in regions[j].pieces:
                    assert intersection_area(a.vertices, b.vertices) == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**4))
def test_witness_views_climb(k, seed):
    poly = staircase(k, seed)
    frame, _ = normalize(poly)
    ws = place_cws(frame).witnesses
    for i in range(0, len(ws) - 1, 2):
        top = max(p.y for p in visibility_polygon(ws[i], frame).region.vertices)
        bottom = min(p.y for p in visibility_polygon(ws[i + 1], frame).region.vertices)
        assert bottom > top


@pytest.mark.parametrize("k, seed", [(2, 0), (3, 1), (4, 2)])
def test_within_twice_optimum(k, seed):
    poly = staircase(k, seed)
    sol = solve_staircase(poly)
    opt = solve(poly, k_max=12, timeout=120)
    assert len(place_cws(poly)) <= opt.opt
    assert len(sol.guards) <= 2 * opt.opt
