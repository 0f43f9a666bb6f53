"""Deterministic SVG pictures of polygons, guards and witnesses.

Right-looking guards are drawn in red, left-looking ones in blue.  Each guard
is a dot plus a half disc that opens toward the side it sees.  Coordinates
are printed with 12 significant digits; all computation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geom import Direction, HalfGuard, Point, Polygon

RIGHT_COLOR = "#d62728"
LEFT_COLOR = "#1f77b4"


def num(x: Fraction | float) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


@dataclass
class Scene:
    polygon: Polygon
    guards: list[HalfGuard] = field(default_factory=list)
    regions: list[tuple[Polygon, Direction | None]] = field(default_factory=list)
    witnesses: list[Point] = field(default_factory=list)
    title: str = ""


class _Frame:
    def __init__(self, poly: Polygon) -> None:
        xmin, ymin, xmax, ymax = poly.bbox()
        w, h = xmax - xmin, ymax - ymin
        side = max(w, h)
        m = side / 20
        self.x0, self.y1 = xmin - m, ymax + m
        self.w, self.h = w + 2 * m, h + 2 * m
        self.r = side / 80  # guard dot radius

    def xy(self, p: Point) -> tuple[str, str]:
        # flip y so the picture is upright
        return num(p.x - self.x0), num(self.y1 - p.y)

    def path(self, pts: Sequence[Point]) -> str:
        parts = []
        for k, p in enumerate(pts):
            x, y = self.xy(p)
            parts.append(f"{'M' if k == 0 else 'L'}{x} {y}")
        return " ".join(parts) + " Z"


def _color(d: Direction | None) -> str:
    if d is Direction.RIGHT:
        return RIGHT_COLOR
    if d is Direction.LEFT:
        return LEFT_COLOR
    return "#7f7f7f"


def _guard(fr: _Frame, g: HalfGuard) -> list[str]:
    x, y = fr.xy(g.position)
    r = num(fr.r)
    big = num(fr.r * 2)
    color = _color(g.dir)
    # half disc: arc from the top to the bottom point, bulging toward the seen side
    sweep = 1 if g.dir is Direction.RIGHT else 0
    top = num(fr.y1 - g.position.y - fr.r * 2)
    bot = num(fr.y1 - g.position.y + fr.r * 2)
    return [
        f'<path d="M{x} {top} A{big} {big} 0 0 {sweep} {x} {bot} Z" fill="{color}" fill-opacity="0.35"/>',
        f'<circle cx="{x}" cy="{y}" r="{r}" fill="{color}"/>',
    ]


def render_svg(scene: Scene) -> str:
    fr = _Frame(scene.polygon)
    stroke = num(fr.r / 3)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {num(fr.w)} {num(fr.h)}">',
    ]
    if scene.title:
        out.append(f"<title>{scene.title}</title>")
    out.append(
        f'<path d="{fr.path(scene.polygon.vertices)}" fill="#f2f2f2" stroke="black" stroke-width="{stroke}"/>'
    )
    for region, d in scene.regions:
        out.append(f'<path d="{fr.path(region.vertices)}" fill="{_color(d)}" fill-opacity="0.2" stroke="none"/>')
    for w in scene.witnesses:
        x, y = fr.xy(w)
        out.append(f'<circle cx="{x}" cy="{y}" r="{num(fr.r)}" fill="none" stroke="black" stroke-width="{stroke}"/>')
    for g in scene.guards:
        out.extend(_guard(fr, g))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str, scene: Scene) -> None:
    with open(path, "w") as fh:
        fh.write(render_svg(scene))
