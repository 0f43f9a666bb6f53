from halfguard.families import FamilySpec, designated_guards, generate
from halfguard.geom import Direction, HalfGuard, Polygon, pt
from halfguard.render import LEFT_COLOR, RIGHT_COLOR, Scene, num, render_svg

SQUARE = Polygon([pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)])


def test_number_formatting():
    assert num(0) == "0"
    assert num(-0.0) == "0"
    assert num(pt(1, 3).y / 7) == "0.428571428571"


def test_square_with_one_guard_has_one_dot():
    svg = render_svg(Scene(SQUARE, [HalfGuard(pt(1, 0), Direction.LEFT)]))
    assert svg.count("<circle") == 1
    assert LEFT_COLOR in svg and RIGHT_COLOR not in svg


def test_viewbox_has_five_percent_margin():
    svg = render_svg(Scene(SQUARE))
    assert 'viewBox="0 0 1.1 1.1"' in svg


def test_two_guardable_shows_red_and_blue():
    spec = FamilySpec("TwoGuardable")
    svg = render_svg(Scene(generate(spec), designated_guards(spec)))
    assert svg.count("<circle") == 2
    assert RIGHT_COLOR in svg and LEFT_COLOR in svg


def test_output_is_byte_stable():
    spec = FamilySpec("RandomStaircase", 3, seed=2)
    scene = Scene(generate(spec), designated_guards(spec), witnesses=[pt(1, 1)], title="x")
    assert render_svg(scene) == render_svg(scene)
