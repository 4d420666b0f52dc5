"""Canonical JSON form of a circuit graph and its nets."""
import logging
from typing import List, Sequence, Tuple

from pydantic import ValidationError

from graph_builder.models import CircuitGraph, Edge, EdgeEnd, Net, NetMember, Node, Port, TextLabel
from graph_builder.nets import net_of_port
from schematics.diagnostics import Diagnostic
from schematics.models import BoundingBox, Polyline
from utils.json_utils import SerializationError, from_json, json_number, to_canonical_json

logger = logging.getLogger(__name__)


def _point(point) -> list:
    return [json_number(float(point[0])), json_number(float(point[1]))]


def _label(label: TextLabel) -> dict:
    return {'id': label.id, 'text': label.text, 'bbox': list(label.bbox.as_tuple())}


def _node(node: Node, nets: dict) -> dict:
    return {
        'id': node.id,
        'kind': node.kind.value,
        'class': node.cls,
        'rotation': None if node.rotation is None else json_number(node.rotation),
        'bbox': list(node.bbox.as_tuple()),
        'ports': [{'name': port.name, 'position': _point(port.position), 'edge': port.edge,
                   'net': nets.get((node.id, index))} for index, port in enumerate(node.ports)],
        'labels': [_label(label) for label in node.labels],
    }


def _edge(edge: Edge) -> dict:
    return {
        'id': edge.id,
        'ends': [{'node': end.node, 'port': end.port} for end in edge.ends],
        'polyline': [_point(p) for p in edge.geometry.points],
    }


def graph_dict(graph: CircuitGraph, nets: Sequence[Net]) -> dict:
    by_port = net_of_port(list(nets))
    data = {
        'nodes': [_node(n, by_port) for n in sorted(graph.nodes, key=lambda n: n.id)],
        'edges': [_edge(e) for e in sorted(graph.edges, key=lambda e: e.id)],
        'nets': [{'id': net.id, 'members': [{'node': m.node, 'port': m.port, 'name': m.name} for m in net.members]}
                 for net in sorted(nets, key=lambda n: n.id)],
        'diagnostics': [d.to_record() for d in graph.diagnostics],
    }
    if graph.annotations:
        data['annotations'] = [_label(label) for label in sorted(graph.annotations, key=lambda a: a.id)]
    return data


def to_graph_json(graph: CircuitGraph, nets: Sequence[Net]) -> bytes:
    return to_canonical_json(graph_dict(graph, nets))


def read_graph_json(data: bytes) -> Tuple[CircuitGraph, List[Net]]:
    raw = from_json(data)
    if not isinstance(raw, dict):
        raise SerializationError('graph JSON must be an object')
    try:
        nodes = [Node(id=n['id'], kind=n['kind'], cls=n['class'], rotation=n['rotation'],
                      bbox=BoundingBox.of(*n['bbox']),
                      ports=[Port(name=p['name'], position=tuple(p['position']), edge=p['edge']) for p in n['ports']],
                      labels=[TextLabel(id=t['id'], text=t['text'], bbox=BoundingBox.of(*t['bbox']))
                              for t in n.get('labels', [])])
                 for n in raw.get('nodes', [])]
        edges = [Edge(id=e['id'], ends=tuple(EdgeEnd(node=end['node'], port=end['port']) for end in e['ends']),
                      geometry=Polyline(points=e['polyline'])) for e in raw.get('edges', [])]
        nets = [Net(id=net['id'], members=[NetMember(**m) for m in net['members']]) for net in raw.get('nets', [])]
        diagnostics = [Diagnostic(**d) for d in raw.get('diagnostics', [])]
        annotations = [TextLabel(id=t['id'], text=t['text'], bbox=BoundingBox.of(*t['bbox']))
                       for t in raw.get('annotations', [])]
    except (KeyError, TypeError, ValidationError) as e:
        raise SerializationError(f'malformed graph JSON: {e}')
    graph = CircuitGraph(nodes=nodes, edges=edges, diagnostics=diagnostics, annotations=annotations)
    graph.check_integrity()
    return graph, nets
