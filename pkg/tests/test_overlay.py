import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfguard.geom import GeometryError, Polygon, pt
from halfguard.overlay import BoolOp, boolean_area, polygon_boolean, residue


def rect(x0, y0, x1, y1):
    return Polygon([pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)])


UNIT = rect(0, 0, 1, 1)


def test_intersection_with_itself():
    out = polygon_boolean(UNIT, UNIT, "intersection")
    assert len(out) == 1 and out[0] == UNIT


def test_difference_with_itself_is_empty():
    assert polygon_boolean(UNIT, UNIT, BoolOp.DIFFERENCE) == []


def test_corner_cut_gives_l_shape():
    out = polygon_boolean(rect(0, 0, 2, 2), UNIT, "difference")
    assert len(out) == 1
    assert out[0].area == 3
    assert len(out[0]) == 6


def test_difference_can_split():
    out = polygon_boolean(rect(0, 0, 3, 1), rect(1, -1, 2, 2), "difference")
    assert sorted(p.area for p in out) == [1, 1]


def test_hole_is_cut_into_simple_pieces():
    out = polygon_boolean(rect(0, 0, 4, 4), rect(1, 1, 2, 2), "difference")
    assert sum(p.area for p in out) == 15


def test_self_intersecting_input_rejected():
    bow = Polygon([pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 1)], check=False)
    with pytest.raises(GeometryError):
        polygon_boolean(bow, UNIT, "union")


def test_residue_of_covering_cutters_is_empty():
    ov = residue(rect(0, 0, 2, 1).vertices, [rect(0, 0, 1, 1).vertices, rect(1, 0, 2, 1).vertices])
    assert ov.area == 0


coords = st.integers(min_value=-6, max_value=6)


@st.composite
def rectangles(draw):
    x0, x1 = sorted(draw(st.lists(coords, min_size=2, max_size=2, unique=True)))
    y0, y1 = sorted(draw(st.lists(coords, min_size=2, max_size=2, unique=True)))
    return rect(x0, y0, x1, y1)


@settings(max_examples=60, deadline=None)
@given(rectangles(), rectangles())
def test_area_identity_on_rectangles(a, b):
    union = boolean_area(a, b, "union")
    inter = boolean_area(a, b, "intersection")
    assert union + inter == a.area + b.area
    assert boolean_area(a, b, "difference") == a.area - inter
