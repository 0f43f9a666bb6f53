from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfguard.geom import (
    GeometryError,
    Location,
    Orientation,
    Overlap,
    Polygon,
    PolygonFormatError,
    Segment,
    format_scalar,
    orientation,
    point_in_ring,
    pt,
    read_polygon_text,
    reflex_vertices,
    segments_intersect,
    to_scalar,
    write_polygon_text,
)

SQUARE = Polygon([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])
L_SHAPE = Polygon([pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])


def test_orientation_examples():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) is Orientation.CCW
    assert orientation(pt(0, 0), pt(1, 1), pt(2, 2)) is Orientation.COLLINEAR
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 0)) is Orientation.CW


def test_segment_intersection_kinds():
    assert segments_intersect(Segment(pt(0, 0), pt(2, 2)), Segment(pt(0, 2), pt(2, 0))) == pt(1, 1)
    assert segments_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(0, 1), pt(1, 1))) is None
    hit = segments_intersect(Segment(pt(0, 0), pt(2, 0)), Segment(pt(1, 0), pt(3, 0)))
    assert isinstance(hit, Overlap)
    assert {hit.a, hit.b} == {pt(1, 0), pt(2, 0)}


def test_touching_endpoints_give_a_point():
    assert segments_intersect(Segment(pt(0, 0), pt(1, 0)), Segment(pt(1, 0), pt(1, 5))) == pt(1, 0)


def test_degenerate_segment_rejected():
    with pytest.raises(GeometryError):
        Segment(pt(1, 1), pt(1, 1))


def test_point_location_in_unit_square():
    assert SQUARE.locate(pt("0.5", "0.5")) is Location.INTERIOR
    assert SQUARE.locate(pt(1, "0.5")) is Location.BOUNDARY
    assert SQUARE.locate(pt(2, 2)) is Location.EXTERIOR


def test_reflex_vertices():
    assert reflex_vertices(Polygon([pt(0, 0), pt(3, 0), pt(4, 2), pt(0, 1)])) == []
    assert len(reflex_vertices(L_SHAPE)) == 1


def test_polygon_is_stored_counterclockwise():
    cw = Polygon([pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)])
    assert cw.area == 1
    assert orientation(*cw.vertices[:3]) is Orientation.CCW


def test_self_intersecting_polygon_rejected():
    with pytest.raises(GeometryError):
        Polygon([pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)])


def test_text_format_round_trip():
    text = "# a triangle\n3\n0 0\n1/3 0\n0.25 2\n"
    poly = read_polygon_text(text)
    assert poly.vertices[1] == pt(Fraction(1, 3), 0)
    assert poly.vertices[2].x == Fraction(1, 4)
    assert read_polygon_text(write_polygon_text(poly, "again")) == poly


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("three\n0 0\n", 1),
        ("3\n0 0\n1 0\n", 1),
        ("3\n0 0\n1 zero\n0 1\n", 3),
        ("3\n0 0\n1 0 7\n0 1\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PolygonFormatError) as info:
        read_polygon_text(text)
    assert info.value.line == line


fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@given(fractions)
def test_scalar_round_trip(s):
    assert to_scalar(format_scalar(s)) == s


@given(fractions, fractions, fractions, fractions, fractions, fractions)
def test_orientation_antisymmetric(ax, ay, bx, by, cx, cy):
    a, b, c = pt(ax, ay), pt(bx, by), pt(cx, cy)
    assert orientation(a, b, c) == -orientation(a, c, b)


def _winding(p, ring):
    w = 0
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if a.y <= p.y < b.y and orientation(a, b, p) is Orientation.CCW:
            w += 1
        elif b.y <= p.y < a.y and orientation(a, b, p) is Orientation.CW:
            w -= 1
    return w


STAR = Polygon([pt(0, 0), pt(4, 1), pt(8, 0), pt(6, 4), pt(8, 8), pt(4, 6), pt(0, 8), pt(2, 4)])
COMB = Polygon([pt(0, 0), pt(7, 0), pt(7, 3), pt(6, 3), pt(6, 1), pt(4, 1), pt(4, 3), pt(3, 3),
                pt(3, 1), pt(1, 1), pt(1, 3), pt(0, 3)])


@settings(max_examples=300)
@given(st.sampled_from([SQUARE, L_SHAPE, STAR, COMB]), fractions, fractions)
def test_point_in_polygon_matches_winding_number(poly, x, y):
    p = pt(x / 100, y / 100)
    loc = point_in_ring(p, poly.vertices)
    if loc is Location.BOUNDARY:
        assert any(orientation(a, b, p) is Orientation.COLLINEAR for a, b in poly.edges())
    else:
        assert (loc is Location.INTERIOR) == (_winding(p, poly.vertices) != 0)
