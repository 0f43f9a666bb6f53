"""Polygon class recognition."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .geom import Point, Polygon, cross, self_intersection


@dataclass(frozen=True)
class PolygonClass:
    simple: bool
    x_monotone: bool
    y_monotone: bool
    monotone_mountain: bool
    orthogonal: bool
    staircase: bool
    spiral: bool

    def names(self) -> list[str]:
        label = {
            "simple": "simple",
            "x_monotone": "x-monotone",
            "y_monotone": "y-monotone",
            "monotone_mountain": "monotone-mountain",
            "orthogonal": "orthogonal",
            "staircase": "staircase",
            "spiral": "spiral",
        }
        return [label[f.name] for f in fields(self) if getattr(self, f.name)]


def _sign_changes(values: list) -> int:
    signs = []
    n = len(values)
    for i in range(n):
        d = values[(i + 1) % n] - values[i]
        if d != 0:
            signs.append(1 if d > 0 else -1)
    if not signs:
        return 0
    return sum(1 for i in range(len(signs)) if signs[i] != signs[i - 1])


def is_x_monotone(poly: Polygon) -> bool:
    return _sign_changes([p.x for p in poly.vertices]) <= 2


def is_y_monotone(poly: Polygon) -> bool:
    return _sign_changes([p.y for p in poly.vertices]) <= 2


def is_orthogonal(poly: Polygon) -> bool:
    return all(a.x == b.x or a.y == b.y for a, b in poly.edges())


def mountain_base(poly: Polygon) -> int | None:
    """Index ``i`` of the horizontal edge (i, i+1) forming one whole chain, if any.

    The edge must join the unique leftmost and the unique rightmost vertex.
    """
    if not is_x_monotone(poly):
        return None
    v = poly.vertices
    n = len(v)
    xs = [p.x for p in v]
    lo, hi = min(xs), max(xs)
    if xs.count(lo) != 1 or xs.count(hi) != 1:
        return None
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if a.y == b.y and {a.x, b.x} == {lo, hi}:
            return i
    return None


def reflex_run(poly: Polygon) -> list[int] | None:
    """Reflex vertex indices in ring order if they form one contiguous run."""
    n = len(poly)
    reflex = [poly.is_reflex_vertex(i) for i in range(n)]
    if not any(reflex):
        return []
    if all(reflex):
        return None
    start = next(i for i in range(n) if reflex[i] and not reflex[i - 1])
    run = []
    i = start
    while reflex[i % n]:
        run.append(i % n)
        i += 1
    if len(run) != sum(reflex):
        return None
    return run


def classify(poly: Polygon) -> PolygonClass:
    simple = self_intersection(poly.vertices) is None
    xm = is_x_monotone(poly)
    ym = is_y_monotone(poly)
    orth = is_orthogonal(poly)
    return PolygonClass(
        simple=simple,
        x_monotone=xm,
        y_monotone=ym,
        monotone_mountain=mountain_base(poly) is not None,
        orthogonal=orth,
        staircase=orth and xm and ym,
        spiral=reflex_run(poly) is not None,
    )


def has_vertical_edges(poly: Polygon) -> bool:
    return any(a.x == b.x for a, b in poly.edges())


def collinear_vertices(poly: Polygon) -> list[int]:
    return [i for i in range(len(poly)) if cross(poly[i - 1], poly[i], poly[i + 1]) == 0]


__all__ = ["PolygonClass", "classify", "is_x_monotone", "is_orthogonal", "mountain_base", "reflex_run"]
