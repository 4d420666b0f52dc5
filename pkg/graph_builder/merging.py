from typing import Tuple

from graph_builder.models import CircuitGraph, Edge, EdgeEnd
from schematics.models import Polyline, dedupe_points


def oriented_points(edge: Edge, end_index: int, towards: bool):
    """Edge points ordered so the given end comes last (`towards`) or first."""
    points = list(edge.geometry.points)
    ends_last = end_index == 1
    return points if ends_last == towards else points[::-1]


def merge_through(graph: CircuitGraph, first: Tuple[Edge, int], second: Tuple[Edge, int]) -> Edge:
    """Joins two edges meeting at one node into a single edge.

    The merged edge keeps the lower id, takes the far ends of both inputs and their geometry
    concatenated across the node. Far-end ports are repointed; the shared node is left for
    the caller to remove.
    """
    (edge_a, end_a), (edge_b, end_b) = first, second
    points = dedupe_points(oriented_points(edge_a, end_a, towards=True) + oriented_points(edge_b, end_b, towards=False))
    far_a, far_b = edge_a.ends[1 - end_a], edge_b.ends[1 - end_b]
    merged = Edge(id=min(edge_a.id, edge_b.id), ends=(far_a.model_copy(), far_b.model_copy()),
                  geometry=Polyline(points=points))

    nodes = graph.node_map()
    for end in merged.ends:
        if end.node is not None:
            nodes[end.node].ports[end.port].edge = merged.id
    graph.edges = sorted([e for e in graph.edges if e.id not in (edge_a.id, edge_b.id)] + [merged],
                         key=lambda e: e.id)
    return merged


def open_end(graph: CircuitGraph, edge: Edge, end_index: int):
    ends = list(edge.ends)
    ends[end_index] = EdgeEnd()
    edge.ends = tuple(ends)


def remove_node(graph: CircuitGraph, node_id: int):
    graph.nodes = [node for node in graph.nodes if node.id != node_id]
