import logging
import math
from typing import List, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from graph_builder.models import CircuitGraph, Node, NodeKind, Port
from schematics.diagnostics import Diagnostic, DiagnosticKind, report
from schematics.geometry import rotate_about_center, to_box_coordinates
from schematics.library import LibraryEntryError, SymbolLibrary
from schematics.models import Polyline, dedupe_points
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)


def library_positions(node: Node, lib: SymbolLibrary, rotation: float) -> List[Tuple[str, Tuple[float, float]]]:
    entry = lib.get(node.cls)
    return [(port.name, to_box_coordinates(*rotate_about_center(port.x, port.y, rotation), node.bbox))
            for port in entry.ports]


def assign_ports(node: Node, lib: SymbolLibrary) -> Tuple[Node, List[Diagnostic]]:
    """Names the detected ports of a symbol after its library entry.

    Detected ports keep their order (edges refer to them by index); library ports nobody
    connected to are appended as open ports.
    """
    if node.kind != NodeKind.SYMBOL:
        return node, []
    node = node.model_copy(deep=True)
    diagnostics = []
    try:
        entry = lib.get(node.cls)
    except LibraryEntryError as e:
        return node, [report(DiagnosticKind.MISSING_LIBRARY_ENTRY, f'node {node.id}: {e}', node=node.id,
                             objects=[node.id], source=logger)]
    if not entry.ports:
        logger.debug(f'assign_ports:: class {node.cls} has no library ports, node {node.id} left unnamed')
        return node, []

    rotation = node.rotation
    if rotation is None:
        rotation = 0.0
        diagnostics.append(report(DiagnosticKind.MISSING_ROTATION, f'node {node.id} ({node.cls}) has no rotation, using 0',
                                  node=node.id, objects=[node.id], source=logger))
    expected = library_positions(node, lib, rotation)

    matched_library = set()
    if node.ports:
        cost = np.array([[math.dist(port.position, position) for _, position in expected] for port in node.ports])
        rows, columns = linear_sum_assignment(cost)
        for row, column in zip(rows, columns):
            name, position = expected[column]
            node.ports[row].name = name
            node.ports[row].position = (float(position[0]), float(position[1]))
            matched_library.add(column)
        for row, port in enumerate(node.ports):
            if row not in set(rows):
                port.name = None
                diagnostics.append(report(DiagnosticKind.UNMATCHED_PORT,
                                          f'node {node.id} ({node.cls}): port at {port.position} has no library counterpart',
                                          node=node.id, objects=[node.id], source=logger))

    for column, (name, position) in enumerate(expected):
        if column not in matched_library:
            node.ports.append(Port(name=name, position=(float(position[0]), float(position[1]))))
    return node, diagnostics


def _move_end(polyline: Polyline, end_index: int, point) -> Polyline:
    points = list(polyline.points)
    points[-1 if end_index else 0] = (float(point[0]), float(point[1]))
    points = dedupe_points(points)
    if len(points) < 2:
        return polyline
    return Polyline(points=points)


@log_stage
def assign_graph_ports(graph: CircuitGraph, lib: SymbolLibrary) -> CircuitGraph:
    graph = graph.model_copy(deep=True)
    edges = graph.edge_map()
    nodes = []
    for node in graph.nodes:
        node, diagnostics = assign_ports(node, lib)
        graph.diagnostics.extend(diagnostics)
        nodes.append(node)
        for index, port in enumerate(node.ports):
            if port.edge is None:
                continue
            edge = edges[port.edge]
            for end_index, end in enumerate(edge.ends):
                if end.node == node.id and end.port == index:
                    edge.geometry = _move_end(edge.geometry, end_index, port.position)
    graph.nodes = nodes
    return graph
