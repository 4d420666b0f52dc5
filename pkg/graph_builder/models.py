from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from schematics.diagnostics import Diagnostic
from schematics.models import BoundingBox, Category, Polyline


class AssemblyError(ValueError):
    pass


class NodeKind(str, Enum):
    SYMBOL = 'symbol'
    JUNCTION = 'junction'
    IMPLICIT_JUNCTION = 'implicit_junction'
    CORNER = 'corner'
    CROSSOVER = 'crossover'


KIND_BY_CATEGORY = {
    Category.SYMBOL: NodeKind.SYMBOL,
    Category.TERMINAL: NodeKind.SYMBOL,
    Category.JUNCTION: NodeKind.JUNCTION,
    Category.CORNER: NodeKind.CORNER,
    Category.CROSSOVER: NodeKind.CROSSOVER,
}

CONNECTING_KINDS = (NodeKind.JUNCTION, NodeKind.IMPLICIT_JUNCTION)


class TextLabel(BaseModel):
    id: int
    text: Optional[str] = None
    bbox: BoundingBox


class Port(BaseModel):
    name: Optional[str] = None
    position: Tuple[float, float]
    edge: Optional[int] = None


class Node(BaseModel):
    id: int
    kind: NodeKind
    cls: Optional[str] = None
    rotation: Optional[float] = None
    bbox: BoundingBox
    ports: List[Port] = Field(default_factory=list)
    labels: List[TextLabel] = Field(default_factory=list)


class EdgeEnd(BaseModel):
    """`node` is None for a wire end left open when its corner was dropped."""
    node: Optional[int] = None
    port: Optional[int] = None


class Edge(BaseModel):
    id: int
    ends: Tuple[EdgeEnd, EdgeEnd]
    geometry: Polyline


class NetMember(BaseModel):
    node: int
    port: int
    name: Optional[str] = None


class Net(BaseModel):
    id: int
    members: List[NetMember]


class CircuitGraph(BaseModel):
    nodes: List[Node] = Field(default_factory=list)
    edges: List[Edge] = Field(default_factory=list)
    diagnostics: List[Diagnostic] = Field(default_factory=list)
    annotations: List[TextLabel] = Field(default_factory=list)

    def node_map(self) -> Dict[int, Node]:
        return {node.id: node for node in self.nodes}

    def edge_map(self) -> Dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    def incidences(self, node_id: int) -> List[Tuple[Edge, int]]:
        """(edge, end index) pairs attached to the node, in edge id order."""
        return [(edge, i) for edge in sorted(self.edges, key=lambda e: e.id)
                for i, end in enumerate(edge.ends) if end.node == node_id]

    def kinds(self) -> Dict[NodeKind, int]:
        counts = {}
        for node in self.nodes:
            counts[node.kind] = counts.get(node.kind, 0) + 1
        return counts

    def check_integrity(self):
        nodes = self.node_map()
        if len(nodes) != len(self.nodes):
            raise AssemblyError('duplicate node ids')
        if len(self.edge_map()) != len(self.edges):
            raise AssemblyError('duplicate edge ids')
        for edge in self.edges:
            for end in edge.ends:
                if end.node is None:
                    continue
                if end.node not in nodes:
                    raise AssemblyError(f'edge {edge.id} references missing node {end.node}')
                ports = nodes[end.node].ports
                if end.port is None or not 0 <= end.port < len(ports):
                    raise AssemblyError(f'edge {edge.id} references missing port {end.port} of node {end.node}')
                if ports[end.port].edge != edge.id:
                    raise AssemblyError(f'port {end.port} of node {end.node} does not point back to edge {edge.id}')
