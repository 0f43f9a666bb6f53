"""Exact-rational toolkit for art gallery problems with opposing half guards."""

from .geom import Direction, HalfGuard, Point, Polygon, pt, read_polygon_text, write_polygon_text
from .visibility import covers, half_visibility_polygon, visibility_polygon

__version__ = "0.1.0"

__all__ = [
    "Direction",
    "HalfGuard",
    "Point",
    "Polygon",
    "covers",
    "half_visibility_polygon",
    "pt",
    "read_polygon_text",
    "visibility_polygon",
    "write_polygon_text",
]
