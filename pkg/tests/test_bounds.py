import random

import pytest

from halfguard.bounds import (
    Algorithm,
    convex_partition_guards,
    convex_pieces,
    fisk_double,
    lshape_guards,
    lshape_pieces,
    mountain_cases,
    mountain_guards,
    mountain_high_reflex_guards,
    three_color,
    triangulate,
)
from halfguard.families import FamilySpec, generate
from halfguard.geom import Polygon, pt, reflex_vertices
from halfguard.overlay import residue
from halfguard.visibility import covers

TRIANGLE = Polygon([pt(0, 0), pt(4, 0), pt(1, 3)])
HEXAGON = Polygon([pt(2, 0), pt(4, 1), pt(4, 3), pt(2, 4), pt(0, 3), pt(0, 1)])
L_SHAPE = Polygon([pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])
RECT = Polygon([pt(0, 0), pt(3, 0), pt(3, 1), pt(0, 1)])
# base on top; v1 = (3,0) has two long sides, v2 = (6,1) a long right side, v3 = (10,0) none
THREE_CASES = Polygon([pt(*c) for c in [(0, 10), (2, 9), (3, 0), (4, 5), (5, 6), (6, 1), (7, 5), (8, 7), (10, 0), (11, 10)]])


def _check(sol, poly):
    assert covers(sol.guards, poly).covered
    assert len(sol.guards) <= sol.bound


def test_triangulation_and_coloring():
    poly = generate(FamilySpec("MonLowerReflex", 12))
    tris = triangulate(poly)
    assert len(tris) == len(poly) - 2
    colors = three_color(tris)
    for t in tris:
        assert len({colors[i] for i in t}) == 3


def test_fisk_examples():
    assert len(fisk_double(TRIANGLE).guards) == 2
    assert len(fisk_double(HEXAGON).guards) <= 4
    poly = generate(FamilySpec("MonLowerReflex", 12))
    sol = fisk_double(poly)
    assert sol.algorithm is Algorithm.FISK_DOUBLE and sol.bound == 8
    _check(sol, poly)


def test_convex_partition_examples():
    assert len(convex_partition_guards(HEXAGON).guards) == 1
    sol = convex_partition_guards(L_SHAPE)
    assert len(sol.guards) == 2
    _check(sol, L_SHAPE)
    poly = generate(FamilySpec("MonLowerConvex", 3))
    sol = convex_partition_guards(poly)
    assert len(sol.guards) == 4
    _check(sol, poly)


@pytest.mark.parametrize("name, n", [("MonLowerConvex", 2), ("MonLowerReflex", 10), ("RandomSpiral", 3), ("OrthLower", 12)])
def test_convex_pieces_tile_the_polygon(name, n):
    poly = generate(FamilySpec(name, n, seed=1))
    pieces = convex_pieces(poly)
    # an extension that ends on another reflex vertex resolves both at once
    assert len(pieces) <= len(reflex_vertices(poly)) + 1
    assert sum(p.area for p in pieces) == poly.area
    assert residue(poly.vertices, [p.vertices for p in pieces]).area == 0


def test_lshape_examples():
    assert len(lshape_guards(RECT).guards) == 1
    sol = lshape_guards(L_SHAPE)
    assert len(sol.guards) == 1
    _check(sol, L_SHAPE)
    poly = generate(FamilySpec("OrthLower", 12))
    sol = lshape_guards(poly)
    assert len(sol.guards) == 3
    _check(sol, poly)


def test_lshape_rejects_slanted_input():
    with pytest.raises(ValueError):
        lshape_guards(TRIANGLE)


@pytest.mark.parametrize("k", range(1, 5))
def test_lshape_pieces_are_small(k):
    poly = generate(FamilySpec("RandomStaircase", k, seed=k))
    pieces = lshape_pieces(poly)
    assert len(pieces) <= len(poly) // 4
    for p in pieces:
        assert len(p) <= 6 and len(reflex_vertices(p)) <= 1
    _check(lshape_guards(poly), poly)


def test_mountain_triangle_needs_one_guard():
    tri = Polygon([pt(0, 1), pt(1, 0), pt(2, 1)])
    assert len(mountain_guards(tri).guards) == 1


def test_mountain_case_assignment():
    cases = {c.vertex: c for c in mountain_cases(THREE_CASES)}
    assert cases[pt(3, 0)].case == 1 and len(cases[pt(3, 0)].guards) == 2
    assert cases[pt(6, 1)].case == 2 and len(cases[pt(6, 1)].guards) == 1
    assert cases[pt(10, 0)].case == 3 and len(cases[pt(10, 0)].guards) == 1
    _check(mountain_guards(THREE_CASES), THREE_CASES)


def test_mountain_rejects_non_mountain():
    with pytest.raises(ValueError):
        mountain_guards(L_SHAPE)


def test_mountain_medium_within_half_n():
    poly = generate(FamilySpec("MountainMedium", 12))
    sol = mountain_guards(poly)
    assert len(sol.guards) <= 6
    _check(sol, poly)


@pytest.mark.parametrize("seed", range(10))
def test_random_mountains_guards_on_the_roof(seed):
    rng = random.Random(seed)
    poly = generate(FamilySpec("RandomMountain", rng.randint(4, 14), seed=seed))
    sol = mountain_guards(poly)
    _check(sol, poly)
    roof = {p.y for p in poly.vertices if p.y == max(q.y for q in poly.vertices)}
    mirrored = {p.y for p in poly.vertices if p.y == min(q.y for q in poly.vertices)}
    assert {g.position.y for g in sol.guards} <= roof | mirrored


def test_high_reflex_small_cases():
    tri = Polygon([pt(0, 1), pt(1, 0), pt(2, 1)])
    assert len(mountain_high_reflex_guards(THREE_CASES).guards) == 6
    poly = generate(FamilySpec("MountainHighReflex", 4))
    sol = mountain_high_reflex_guards(poly)
    assert len(sol.guards) == 4
    _check(sol, poly)
    assert mountain_high_reflex_guards(tri).bound == 2
