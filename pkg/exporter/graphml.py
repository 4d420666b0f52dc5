import io

import networkx as nx

from graph_builder.models import CircuitGraph
from graph_builder.nets import net_of_edge
from utils.json_utils import SerializationError


def _bbox(bbox) -> str:
    return ','.join(str(v) for v in bbox.as_tuple())


def to_networkx(graph: CircuitGraph, nets=()) -> nx.MultiGraph:
    """Open wire ends get a placeholder node of kind 'open' so every edge has two endpoints."""
    edge_nets = net_of_edge(graph, list(nets))
    result = nx.MultiGraph()
    for node in sorted(graph.nodes, key=lambda n: n.id):
        attributes = {'kind': node.kind.value, 'class': node.cls, 'rotation': node.rotation, 'bbox': _bbox(node.bbox)}
        result.add_node(f'n{node.id}', **{k: v for k, v in attributes.items() if v is not None})
    for edge in sorted(graph.edges, key=lambda e: e.id):
        endpoints = []
        for index, end in enumerate(edge.ends):
            if end.node is None:
                placeholder = f'open{edge.id}.{index}'
                result.add_node(placeholder, kind='open')
                endpoints.append(placeholder)
            else:
                endpoints.append(f'n{end.node}')
        attributes = {'net': edge_nets.get(edge.id),
                      'length': edge.geometry.length,
                      'polyline': ' '.join(f'{x:g},{y:g}' for x, y in edge.geometry.points)}
        result.add_edge(*endpoints, key=f'e{edge.id}', **{k: v for k, v in attributes.items() if v is not None})
    return result


def to_graphml(graph: CircuitGraph, nets=()) -> bytes:
    buffer = io.BytesIO()
    try:
        nx.write_graphml(to_networkx(graph, nets), buffer, encoding='utf-8', prettyprint=True)
    except (nx.NetworkXError, TypeError, ValueError) as e:
        raise SerializationError(f'Error writing GraphML: {e}')
    return buffer.getvalue()
