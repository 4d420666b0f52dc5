from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from exporter.graph_json import to_graph_json
from exporter.graphml import to_graphml
from exporter.netlist import to_netlist
from exporter.overlay import Stage, render_overlay
from graph_builder.models import CircuitGraph, Net
from schematics.library import SymbolLibrary


@dataclass(frozen=True)
class ExportBundle:
    graph_json: bytes
    graphml: bytes
    netlist: bytes
    overlay_svg: Optional[bytes] = None


def export_bundle(graph: CircuitGraph, nets: Sequence[Net], lib: SymbolLibrary, image: str = '',
                  size: Optional[tuple] = None, prefixes: Optional[Dict[str, str]] = None) -> ExportBundle:
    """All formats of one graph; the overlay needs the image `size` as (width, height)."""
    overlay = None
    if size is not None:
        overlay = render_overlay(size[0], size[1], graph, Stage.GRAPH_RECTIFICATION, nets)
    return ExportBundle(graph_json=to_graph_json(graph, nets), graphml=to_graphml(graph, nets),
                        netlist=to_netlist(graph, nets, lib, image=image, prefixes=prefixes), overlay_svg=overlay)
