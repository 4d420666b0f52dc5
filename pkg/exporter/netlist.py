import logging
from typing import Dict, Optional, Sequence

from graph_builder.models import CircuitGraph, Net, Node, NodeKind
from graph_builder.nets import net_of_port
from schematics.library import LibraryEntryError, SymbolLibrary, load_library

logger = logging.getLogger(__name__)

DEFAULT_PREFIXES = {
    'resistor': 'R',
    'capacitor': 'C',
    'diode': 'D',
    'inductor': 'L',
    'transistor': 'Q',
}
FALLBACK_PREFIX = 'U'
NOT_CONNECTED = 'NC'


def designator_prefix(cls: Optional[str], prefixes: Dict[str, str]) -> str:
    if not cls:
        return FALLBACK_PREFIX
    return prefixes.get(cls, prefixes.get(cls.split('.')[0], FALLBACK_PREFIX))


def _format_rotation(rotation: float) -> str:
    return f'rot={rotation:g}'


def _describe(node: Node) -> str:
    parts = [node.cls or 'unknown']
    parts.extend(label.text for label in sorted(node.labels, key=lambda l: l.id) if label.text)
    if node.rotation is not None:
        parts.append(_format_rotation(node.rotation))
    return ' '.join(parts)


def to_netlist(graph: CircuitGraph, nets: Sequence[Net], lib: Optional[SymbolLibrary] = None, image: str = '',
               prefixes: Optional[Dict[str, str]] = None) -> bytes:
    """SPICE-like listing, one line per symbol: designator, net per library port, then a comment."""
    lib = lib or load_library()
    prefixes = DEFAULT_PREFIXES if prefixes is None else prefixes
    by_port = net_of_port(list(nets))
    ordinals = {}
    lines = [f'* {image}'.rstrip()]
    for node in sorted(graph.nodes, key=lambda n: n.id):
        if node.kind != NodeKind.SYMBOL:
            continue
        prefix = designator_prefix(node.cls, prefixes)
        ordinals[prefix] = ordinals.get(prefix, 0) + 1
        designator = f'{prefix}{ordinals[prefix]}'
        try:
            library_ports = [port.name for port in lib.get(node.cls).ports]
        except LibraryEntryError:
            library_ports = []
        if not library_ports:
            lines.append(f'{designator} ; {_describe(node)} ; unported')
            continue
        index_of = {port.name: index for index, port in enumerate(node.ports) if port.name is not None}
        pins = []
        for name in library_ports:
            net_id = by_port.get((node.id, index_of[name])) if name in index_of else None
            pins.append(NOT_CONNECTED if net_id is None else str(net_id))
        lines.append(f'{designator} {" ".join(pins)} ; {_describe(node)}')
    return ('\n'.join(lines) + '\n').encode('utf-8')
