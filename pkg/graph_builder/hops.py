import logging
import math

from graph_builder.merging import merge_through, oriented_points, remove_node
from graph_builder.models import CircuitGraph, NodeKind
from schematics.diagnostics import DiagnosticKind, report
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)

AMBIGUITY_DEGREES = 5.0
TAIL_PX = 15.0
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def entering_direction(points, reach: float = TAIL_PX) -> float:
    """Direction of travel into the last point, taken from the first vertex at least `reach` px back.

    Single skeleton steps are quantized to 45 degrees and wobble where a stroke meets a mask edge.
    """
    end = points[-1]
    start = points[0]
    for point in reversed(points[:-1]):
        start = point
        if math.hypot(end[0] - point[0], end[1] - point[1]) >= reach:
            break
    return math.atan2(end[1] - start[1], end[0] - start[0])


def deviation(a: float, b: float) -> float:
    """Degrees by which two directions miss being parallel (either sense)."""
    return math.degrees(math.acos(min(1.0, abs(math.cos(a - b)))))


@log_stage
def resolve_hops(graph: CircuitGraph) -> CircuitGraph:
    """Replaces each crossover by two through-going wires, pairing its four edges by direction."""
    graph = graph.model_copy(deep=True)
    for node in sorted(graph.nodes, key=lambda n: n.id):
        if node.kind != NodeKind.CROSSOVER:
            continue
        incidences = graph.incidences(node.id)
        if len(incidences) != 4 or len({edge.id for edge, _ in incidences}) != 4:
            graph.diagnostics.append(report(DiagnosticKind.HOP_UNRESOLVED,
                                            f'crossover {node.id} has {len(incidences)} edge end(s), expected 4',
                                            node=node.id, objects=[node.id], source=logger))
            continue

        directions = [entering_direction(oriented_points(edge, end, towards=True)) for edge, end in incidences]
        costs = [sum(deviation(directions[i], directions[j]) for i, j in pairing) for pairing in PAIRINGS]
        ranked = sorted(range(len(PAIRINGS)), key=lambda k: (costs[k], k))
        best = PAIRINGS[ranked[0]]
        if costs[ranked[1]] - costs[ranked[0]] < AMBIGUITY_DEGREES:
            graph.diagnostics.append(report(DiagnosticKind.HOP_AMBIGUOUS,
                                            f'crossover {node.id}: pairings cost {costs[ranked[0]]:.1f} and '
                                            f'{costs[ranked[1]]:.1f} degrees',
                                            node=node.id, objects=[node.id], source=logger))
        for i, j in best:
            merge_through(graph, incidences[i], incidences[j])
        remove_node(graph, node.id)
    return graph
