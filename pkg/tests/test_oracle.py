from fractions import Fraction

import pytest

from halfguard.families import FamilySpec, designated_guards, generate, witness_set
from halfguard.geom import Direction, HalfGuard, Polygon, half_sees, pt
from halfguard.oracle import (
    OracleTimeout,
    build_matrix,
    candidate_points,
    extension_candidates,
    lower_bound_witnesses,
    min_cover,
    solve,
    witness_points,
)
from halfguard.staircase import place_cws
from halfguard.visibility import covers

SQUARE = Polygon([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
L_SHAPE = Polygon([pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])


def test_square_candidates_include_vertices_both_ways():
    cands = set(candidate_points(SQUARE))
    for v in SQUARE.vertices:
        assert HalfGuard(v, Direction.LEFT) in cands and HalfGuard(v, Direction.RIGHT) in cands


def test_candidate_count_stays_small_on_comb():
    assert len(candidate_points(generate(FamilySpec("OrthLower", 8)))) < 500


def test_witness_faces():
    assert len(witness_points(SQUARE)) == 1
    assert len(witness_points(L_SHAPE)) >= 2


def test_matrix_agrees_with_direct_predicate():
    poly = generate(FamilySpec("MonLowerConvex", 2))
    m = build_matrix(poly, candidate_points(poly)[:60], witness_points(poly))
    for c, g in enumerate(m.candidates):
        assert m.row(c) == [half_sees(g, w, poly) for w in m.witnesses]


def test_square_needs_one_guard():
    res = solve(SQUARE)
    assert res.opt == 1 and res.verified


def test_mon_lower_convex_needs_three():
    poly = generate(FamilySpec("MonLowerConvex", 2))
    cands = candidate_points(poly)
    m = build_matrix(poly, cands, witness_points(poly, candidates=cands))
    pick = min_cover(m)
    assert len(pick) >= 3
    assert solve(poly).opt == 3


def test_orth_lower_needs_three():
    res = solve(generate(FamilySpec("OrthLower", 12)))
    assert res.opt == 3


def test_two_guardable_minimum_mixes_directions():
    spec = FamilySpec("TwoGuardable", length=Fraction(10))
    poly = generate(spec)
    res = solve(poly, candidates=extension_candidates(poly) + designated_guards(spec))
    assert res.opt == 2
    assert {g.dir for g in res.guards} == {Direction.LEFT, Direction.RIGHT}
    assert covers(res.guards, poly).covered


def test_no_cover_within_kmax():
    assert solve(generate(FamilySpec("OrthLower", 12)), k_max=2) is None


def test_timeout_is_reported():
    with pytest.raises(OracleTimeout):
        solve(generate(FamilySpec("RandomStaircase", 6, seed=3)), timeout=1e-9)


def test_timeout_from_environment(monkeypatch):
    monkeypatch.setenv("HALFGUARD_TIMEOUT_SECS", "0.000000001")
    with pytest.raises(OracleTimeout):
        solve(generate(FamilySpec("RandomStaircase", 6, seed=3)))


def test_witness_lower_bounds():
    with pytest.raises(ValueError):
        lower_bound_witnesses(SQUARE, [pt(Fraction(1, 4), Fraction(1, 4)), pt(Fraction(3, 4), Fraction(3, 4))])
    spec = FamilySpec("OrthLower", 8)
    assert lower_bound_witnesses(generate(spec), witness_set(spec).points) == 2
    stair = generate(FamilySpec("RandomStaircase", 3, seed=4))
    w = place_cws(stair).witnesses
    assert lower_bound_witnesses(stair, w) == len(w)


@pytest.mark.parametrize("k", [2, 3])
def test_optimum_is_deterministic_and_above_witness_bound(k):
    poly = generate(FamilySpec("RandomStaircase", k, seed=7))
    a, b = solve(poly), solve(poly)
    assert a.opt == b.opt
    assert a.opt >= lower_bound_witnesses(poly, place_cws(poly).witnesses)
