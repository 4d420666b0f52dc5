import logging
from typing import Dict, List, Tuple

from networkx.utils import UnionFind

from graph_builder.models import CONNECTING_KINDS, CircuitGraph, Net, NetMember, NodeKind

logger = logging.getLogger(__name__)


def port_links(graph: CircuitGraph) -> Tuple[UnionFind, set]:
    """Union-find over (node, port) keys plus the set of keys some edge touches."""
    links = UnionFind()
    wired = set()
    for edge in graph.edges:
        present = [(end.node, end.port) for end in edge.ends if end.node is not None]
        for key in present:
            links[key]
            wired.add(key)
        if len(present) == 2:
            links.union(*present)
    for node in graph.nodes:
        if node.kind in CONNECTING_KINDS and len(node.ports) > 1:
            links.union(*[(node.id, index) for index in range(len(node.ports))])
    return links, wired


def derive_nets(graph: CircuitGraph, include_open: bool = False) -> List[Net]:
    """Groups symbol ports that are wired together.

    Edge ends are joined directly and junctions join all of their ports. Only groups that
    hold a wire and a symbol port become nets; `include_open` adds one single-member net per
    unconnected symbol port. Nets are numbered from 1 in order of their lowest member.
    """
    nodes = graph.node_map()
    links, wired = port_links(graph)

    groups = {}
    for key in sorted(wired):
        groups.setdefault(links[key], set()).add(key)

    member_sets = []
    for members in groups.values():
        symbol_ports = sorted(k for k in members if nodes[k[0]].kind == NodeKind.SYMBOL)
        if symbol_ports:
            member_sets.append(symbol_ports)
    if include_open:
        for node in nodes.values():
            if node.kind != NodeKind.SYMBOL:
                continue
            for index in range(len(node.ports)):
                if (node.id, index) not in wired:
                    member_sets.append([(node.id, index)])

    member_sets.sort(key=lambda members: members[0])
    nets = [Net(id=number, members=[NetMember(node=n, port=p, name=nodes[n].ports[p].name) for n, p in members])
            for number, members in enumerate(member_sets, start=1)]
    logger.debug(f'derive_nets:: {len(nets)} net(s) from {len(graph.edges)} edge(s)')
    return nets


def net_of_port(nets: List[Net]) -> Dict[Tuple[int, int], int]:
    return {(member.node, member.port): net.id for net in nets for member in net.members}


def net_of_edge(graph: CircuitGraph, nets: List[Net]) -> Dict[int, int]:
    """Net id carried by each wire, for edges whose group reaches a symbol port."""
    links, _ = port_links(graph)
    by_root = {}
    for (node, port), net_id in net_of_port(nets).items():
        if (node, port) in links.parents:
            by_root[links[(node, port)]] = net_id
    mapping = {}
    for edge in graph.edges:
        for end in edge.ends:
            if end.node is not None and links[(end.node, end.port)] in by_root:
                mapping[edge.id] = by_root[links[(end.node, end.port)]]
                break
    return mapping
