import logging

from graph_builder.merging import merge_through, open_end, remove_node
from graph_builder.models import CircuitGraph, NodeKind
from schematics.diagnostics import DiagnosticKind, report
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)


@log_stage
def collapse_corners(graph: CircuitGraph) -> CircuitGraph:
    graph = graph.model_copy(deep=True)
    for node in sorted(graph.nodes, key=lambda n: n.id):
        if node.kind != NodeKind.CORNER:
            continue
        incidences = graph.incidences(node.id)
        if len(incidences) == 2 and incidences[0][0].id != incidences[1][0].id:
            merge_through(graph, incidences[0], incidences[1])
            remove_node(graph, node.id)
        elif len(incidences) >= 3:
            node.kind = NodeKind.IMPLICIT_JUNCTION
            graph.diagnostics.append(report(DiagnosticKind.CORNER_JUNCTION,
                                            f'corner {node.id} joins {len(incidences)} edges, kept as a junction',
                                            node=node.id, objects=[node.id], source=logger))
        else:
            for edge, end in incidences:
                open_end(graph, edge, end)
            remove_node(graph, node.id)
            graph.diagnostics.append(report(DiagnosticKind.CORNER_DANGLING,
                                            f'corner {node.id} has {len(incidences)} edge end(s), dropped',
                                            node=node.id, objects=[node.id], source=logger))
    return graph
