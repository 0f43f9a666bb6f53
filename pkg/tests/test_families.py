from fractions import Fraction
from itertools import combinations

import pytest

from halfguard.families import Family, FamilySpec, designated_guards, generate, witness_set
from halfguard.geom import Direction, HalfGuard, half_sees, reflex_vertices
from halfguard.oracle import candidate_points, lower_bound_witnesses
from halfguard.visibility import covers


def test_family_names_parse_loosely():
    assert Family.parse("mon-lower-reflex") is Family.MON_LOWER_REFLEX
    assert FamilySpec("orth_lower", 8).family is Family.ORTH_LOWER
    with pytest.raises(ValueError):
        Family.parse("pentagram")


@pytest.mark.parametrize("name, n", [("MonLowerReflex", 5), ("OrthLower", 10), ("MonLowerConvex", 0)])
def test_bad_sizes_rejected(name, n):
    with pytest.raises(ValueError):
        generate(FamilySpec(name, n))


def test_generation_is_deterministic():
    for name in ["RandomStaircase", "RandomSpiral", "RandomMountain"]:
        spec = FamilySpec(name, 4 if name != "RandomMountain" else 9, seed=11)
        assert generate(spec) == generate(spec)


@pytest.mark.parametrize(
    "name, n, count",
    [
        ("MonLowerReflex", 9, 6),
        ("MonLowerReflex", 13, 8),
        ("MonLowerConvex", 1, 2),
        ("MonLowerConvex", 3, 4),
        ("OrthLower", 8, 2),
        ("OrthLower", 16, 4),
        ("TwoGuardable", 0, 2),
    ],
)
def test_designated_guards_cover(name, n, count):
    spec = FamilySpec(name, n)
    guards = designated_guards(spec)
    assert len(guards) == count
    assert covers(guards, generate(spec)).covered


def test_mon_lower_convex_has_r_reflex_vertices():
    assert len(reflex_vertices(generate(FamilySpec("MonLowerConvex", 2)))) == 2


def test_mon_lower_reflex_tops_line_up_with_bottoms():
    poly = generate(FamilySpec("MonLowerReflex", 10))
    bottoms = {p.x for p in poly.vertices if p.y == -10}
    upper_reflex = {poly.vertices[i].x for i in reflex_vertices(poly) if poly.vertices[i].y >= 0}
    assert bottoms <= upper_reflex
    assert len(bottoms) == 3


@pytest.mark.parametrize("length", [10, 100, 1000])
def test_two_guardable_at_several_lengths(length):
    spec = FamilySpec("TwoGuardable", length=Fraction(length))
    guards = designated_guards(spec)
    assert sorted(g.dir.value for g in guards) == ["L", "R"]
    assert covers(guards, generate(spec)).covered


def test_orth_lower_witnesses_have_disjoint_views():
    for n in (8, 12):
        spec = FamilySpec("OrthLower", n)
        ws = witness_set(spec)
        assert ws.full and ws.bound == n // 4
        assert lower_bound_witnesses(generate(spec), ws.points) == n // 4


def test_mon_lower_convex_marks_pairwise_unshareable():
    spec = FamilySpec("MonLowerConvex", 2)
    poly = generate(spec)
    ws = witness_set(spec)
    assert len(ws.points) == 3
    for g in candidate_points(poly):
        seen = [w for w in ws.points if half_sees(g, w, poly)]
        assert len(seen) <= 1


def test_mon_lower_reflex_eps_points():
    spec = FamilySpec("MonLowerReflex", 9, eps=Fraction(1, 100))
    ws = witness_set(spec)
    assert len(ws.points) == 6 and not ws.full
    poly = generate(spec)
    assert all(poly.contains(w) for w in ws.points)


def test_witness_set_refuses_upper_bound_families():
    with pytest.raises(ValueError):
        witness_set(FamilySpec("RandomSpiral", 3))


def test_high_reflex_mountain_designated_guards():
    spec = FamilySpec("MountainHighReflex", 4)
    guards = designated_guards(spec)
    assert len(guards) == 4
    assert covers(guards, generate(spec)).covered
    assert all(isinstance(g, HalfGuard) for g in guards)
    assert {g.dir for g in guards} == {Direction.LEFT, Direction.RIGHT}


def test_staircase_witnesses_pairwise_disjoint():
    spec = FamilySpec("RandomStaircase", 4, seed=2)
    ws = witness_set(spec)
    assert lower_bound_witnesses(generate(spec), ws.points) == len(ws.points)
    assert all(a != b for a, b in combinations(ws.points, 2))
