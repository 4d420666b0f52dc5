import math
from typing import Optional, Sequence, Tuple

from schematics.models import BoundingBox

Point = Tuple[float, float]


def iou(a: BoundingBox, b: BoundingBox) -> float:
    ix = min(a.xmax, b.xmax) - max(a.xmin, b.xmin)
    iy = min(a.ymax, b.ymax) - max(a.ymin, b.ymin)
    if ix <= 0 or iy <= 0:
        return 0.0
    intersection = ix * iy
    return intersection / float(a.area + b.area - intersection)


def inflate(b: BoundingBox, margin: int, bounds: Optional[Tuple[int, int]] = None) -> BoundingBox:
    """Moves every side outward by `margin`; `bounds` is (width, height) of the image."""
    if margin < 0:
        raise ValueError(f'inflate:: margin must be >= 0, got {margin}')
    xmin, ymin = max(0, b.xmin - margin), max(0, b.ymin - margin)
    xmax, ymax = b.xmax + margin, b.ymax + margin
    if bounds is not None:
        width, height = bounds
        xmax, ymax = min(xmax, width), min(ymax, height)
    return BoundingBox(xmin=xmin, ymin=ymin, xmax=xmax, ymax=ymax)


def distance(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def rotate_about_center(u: float, v: float, degrees: float) -> Point:
    """Rotates a unit-square point counter-clockwise (as seen on screen, y down) about (0.5, 0.5)."""
    theta = math.radians(degrees)
    c, s = math.cos(theta), math.sin(theta)
    dx, dy = u - 0.5, v - 0.5
    return 0.5 + dx * c + dy * s, 0.5 - dx * s + dy * c


def to_box_coordinates(u: float, v: float, box: BoundingBox) -> Point:
    return box.xmin + u * box.width, box.ymin + v * box.height


def direction_degrees(points: Sequence[Point]) -> float:
    """Angle of the last segment, counter-clockwise from +x with y pointing up."""
    (x0, y0), (x1, y1) = points[-2], points[-1]
    return math.degrees(math.atan2(-(y1 - y0), x1 - x0)) % 360.0
