"""Wire geometry clean-up: Douglas-Peucker simplification followed by axis snapping.

First and last vertices are ports and never move. Snapping walks the segments from both ends
toward the middle; each snapped segment copies the shared coordinate from the vertex nearer
to its end onto the next vertex, which then stays put for the rest of the pass.
"""
import logging
import math
from typing import List, Optional

from shapely.geometry import LineString

from graph_builder.models import CircuitGraph
from schematics.models import Polyline, dedupe_points
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 3.0
DEFAULT_SNAP = 10.0

HORIZONTAL, VERTICAL = 'h', 'v'
_AXIS = {HORIZONTAL: 1, VERTICAL: 0}


def segment_axis(a, b, snap: float) -> Optional[str]:
    angle = math.degrees(math.atan2(abs(b[1] - a[1]), abs(b[0] - a[0])))
    if angle <= snap:
        return HORIZONTAL
    if angle >= 90.0 - snap:
        return VERTICAL
    return None


def _prune(points: List[List[float]]) -> List[tuple]:
    points = dedupe_points(points)
    kept = [points[0]]
    for current, following in zip(points[1:], points[2:]):
        previous = kept[-1]
        cross = (current[0] - previous[0]) * (following[1] - current[1]) - \
            (current[1] - previous[1]) * (following[0] - current[0])
        dot = (current[0] - previous[0]) * (following[0] - current[0]) + \
            (current[1] - previous[1]) * (following[1] - current[1])
        if abs(cross) <= 1e-9 and dot >= 0:
            continue
        kept.append(current)
    kept.append(points[-1])
    return kept


def rectify(polyline: Polyline, epsilon: float = DEFAULT_EPSILON, snap: float = DEFAULT_SNAP) -> Polyline:
    """Simplifies and axis-snaps one wire.

    When the middle segment snaps but both of its vertices are already pinned on that axis, a
    two-bend jog is inserted halfway instead of averaging the pinned coordinates, so no port
    or earlier snap is moved.
    """
    if epsilon <= 0:
        raise ValueError(f'rectify:: epsilon must be > 0, got {epsilon}')
    if not 0 <= snap < 45:
        raise ValueError(f'rectify:: snap must be in [0, 45), got {snap}')

    simplified = LineString(polyline.points).simplify(epsilon, preserve_topology=False)
    points = [list(p) for p in simplified.coords]
    if len(points) < 2 or points[0] != list(polyline.start) or points[-1] != list(polyline.end):
        points = [list(polyline.start)] + points[1:-1] + [list(polyline.end)]
    axes = [segment_axis(a, b, snap) for a, b in zip(points, points[1:])]

    segments = len(points) - 1
    middle = segments // 2
    locked = [set() for _ in points]
    locked[0] = locked[-1] = {0, 1}

    for i in range(middle):
        if axes[i] is not None:
            coordinate = _AXIS[axes[i]]
            if coordinate not in locked[i + 1]:
                points[i + 1][coordinate] = points[i][coordinate]
                locked[i + 1].add(coordinate)
    for i in range(segments - 1, middle, -1):
        if axes[i] is not None:
            coordinate = _AXIS[axes[i]]
            if coordinate not in locked[i]:
                points[i][coordinate] = points[i + 1][coordinate]
                locked[i].add(coordinate)

    if axes[middle] is not None:
        coordinate = _AXIS[axes[middle]]
        a, b = points[middle], points[middle + 1]
        if a[coordinate] != b[coordinate]:
            if coordinate not in locked[middle]:
                a[coordinate] = b[coordinate]
            elif coordinate not in locked[middle + 1]:
                b[coordinate] = a[coordinate]
            else:
                # both ends pinned: bend twice halfway along the segment
                along = 1 - coordinate
                half = (a[along] + b[along]) / 2.0
                bend_a, bend_b = [0.0, 0.0], [0.0, 0.0]
                bend_a[along] = bend_b[along] = half
                bend_a[coordinate], bend_b[coordinate] = a[coordinate], b[coordinate]
                points[middle + 1:middle + 1] = [bend_a, bend_b]

    pruned = _prune(points)
    if len(pruned) < 2:
        logger.debug(f'rectify:: closed polyline from {polyline.start} left untouched')
        return polyline
    return Polyline(points=pruned)


@log_stage
def rectify_graph(graph: CircuitGraph, epsilon: float = DEFAULT_EPSILON, snap: float = DEFAULT_SNAP) -> CircuitGraph:
    graph = graph.model_copy(deep=True)
    for edge in graph.edges:
        edge.geometry = rectify(edge.geometry, epsilon, snap)
    return graph
