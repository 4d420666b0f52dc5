import logging
import math
from typing import List, Sequence

from edges.extractor import WireSegment
from graph_builder.models import (KIND_BY_CATEGORY, AssemblyError, CircuitGraph, Edge, EdgeEnd, Node, NodeKind,
                                  Port)
from schematics.diagnostics import Diagnostic, DiagnosticKind, report
from schematics.models import AnnotatedObject, BoundingBox, Category
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)


def _point_box(point) -> BoundingBox:
    x, y = int(math.floor(point[0])), int(math.floor(point[1]))
    return BoundingBox.of(max(0, x), max(0, y), max(0, x) + 1, max(0, y) + 1)


def check_junctions(graph: CircuitGraph) -> List[Diagnostic]:
    diagnostics = []
    for node in sorted(graph.nodes, key=lambda n: n.id):
        if node.kind != NodeKind.JUNCTION:
            continue
        degree = len(graph.incidences(node.id))
        if degree < 3:
            diagnostics.append(report(DiagnosticKind.JUNCTION_DEGREE, f'junction {node.id} has {degree} edge(s)',
                                      node=node.id, objects=[node.id], source=logger))
    return diagnostics


@log_stage
def assemble(objects: Sequence[AnnotatedObject], segments: Sequence[WireSegment],
             diagnostics: Sequence[Diagnostic] = ()) -> CircuitGraph:
    """One node per non-text object, one edge per segment and one port per segment end.

    Implicit branch ends become implicit junction nodes numbered after the largest object id.
    """
    nodes = {}
    for obj in sorted(objects, key=lambda o: o.id):
        if obj.category == Category.TEXT:
            continue
        nodes[obj.id] = Node(id=obj.id, kind=KIND_BY_CATEGORY[obj.category], cls=obj.cls.name,
                             rotation=obj.rotation, bbox=obj.bbox)

    next_id = max((o.id for o in objects), default=-1) + 1
    implicit = {}
    for segment in segments:
        for end in segment.endpoints:
            if end.implicit and end.object_id not in implicit:
                implicit[end.object_id] = end.point
    for local_id in sorted(implicit, reverse=True):
        nodes[next_id] = Node(id=next_id, kind=NodeKind.IMPLICIT_JUNCTION, bbox=_point_box(implicit[local_id]))
        implicit[local_id] = next_id
        next_id += 1

    edges = []
    for edge_id, segment in enumerate(segments):
        ends = []
        for end in segment.endpoints:
            node_id = implicit[end.object_id] if end.implicit else end.object_id
            if node_id not in nodes:
                raise AssemblyError(f'segment of blob {segment.blob_id} references object {end.object_id}, '
                                    f'which is not a wiring object')
            node = nodes[node_id]
            node.ports.append(Port(position=end.point, edge=edge_id))
            ends.append(EdgeEnd(node=node_id, port=len(node.ports) - 1))
        edges.append(Edge(id=edge_id, ends=tuple(ends), geometry=segment.polyline))

    graph = CircuitGraph(nodes=list(nodes.values()), edges=edges, diagnostics=list(diagnostics))
    graph.diagnostics.extend(check_junctions(graph))
    logger.debug(f'assemble:: {len(graph.nodes)} node(s), {len(graph.edges)} edge(s)')
    return graph
