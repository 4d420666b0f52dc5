"""Debug overlays of the pipeline stages, rendered from a jinja2 SVG template."""
import base64
import colorsys
import hashlib
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from jinja2 import Environment, FileSystemLoader, select_autoescape

from graph_builder.models import CircuitGraph, Net
from graph_builder.nets import net_of_edge

TEMPLATE_DIR = Path(__file__).resolve().parent / 'templates'
NET_PALETTE = ('#e6194b', '#3cb44b', '#4363d8', '#f58231', '#911eb4', '#42d4f4', '#f032e6', '#9a6324', '#800000',
               '#469990', '#000075', '#808000')
WIRE_COLOR = '#555555'
PORT_COLOR = '#000000'

_environment = Environment(loader=FileSystemLoader(str(TEMPLATE_DIR)),
                           autoescape=select_autoescape(enabled_extensions=('j2', 'svg'), default=True),
                           keep_trailing_newline=True)


class Stage(str, Enum):
    RAW = 'raw'
    DETECTION = 'detection'
    ORIENTATION_TEXT = 'orientation-text'
    EDGE_EXTRACTION = 'edge-extraction'
    EDGE_SEGMENTS = 'edge-segments'
    GRAPH_RECTIFICATION = 'graph-rectification'


def class_color(name: Optional[str]) -> str:
    digest = hashlib.md5((name or '').encode('utf-8')).digest()
    red, green, blue = colorsys.hls_to_rgb(digest[0] / 255.0, 0.4, 0.7)
    return f'#{round(red * 255):02x}{round(green * 255):02x}{round(blue * 255):02x}'


def net_color(net_id: int) -> str:
    return NET_PALETTE[(net_id - 1) % len(NET_PALETTE)]


def _number(value: float) -> str:
    return f'{value:g}'


def _label(node, stage: Stage) -> str:
    label = node.cls or node.kind.value
    if stage == Stage.ORIENTATION_TEXT:
        if node.rotation is not None:
            label += f' {node.rotation:g}°'
        texts = [t.text for t in node.labels if t.text]
        if texts:
            label += ' "' + ' '.join(texts) + '"'
    return label


def render_overlay(width: int, height: int, graph: CircuitGraph, stage: Stage | str = Stage.GRAPH_RECTIFICATION,
                   nets: Sequence[Net] = (), background_png: Optional[bytes] = None) -> bytes:
    stage = Stage(stage)
    boxes, ports, wires = [], [], []
    if stage != Stage.RAW:
        for node in sorted(graph.nodes, key=lambda n: n.id):
            boxes.append({'id': node.id, 'x': node.bbox.xmin, 'y': node.bbox.ymin, 'width': node.bbox.width,
                          'height': node.bbox.height, 'label_y': max(10, node.bbox.ymin - 2),
                          'color': class_color(node.cls), 'label': _label(node, stage)})
            if stage in (Stage.EDGE_EXTRACTION, Stage.EDGE_SEGMENTS, Stage.GRAPH_RECTIFICATION):
                ports.extend({'x': _number(p.position[0]), 'y': _number(p.position[1]), 'color': PORT_COLOR}
                             for p in node.ports)
        for text in sorted(graph.annotations, key=lambda t: t.id):
            label = f'"{text.text}"' if stage == Stage.ORIENTATION_TEXT and text.text else 'text'
            boxes.append({'id': text.id, 'x': text.bbox.xmin, 'y': text.bbox.ymin, 'width': text.bbox.width,
                          'height': text.bbox.height, 'label_y': max(10, text.bbox.ymin - 2),
                          'color': class_color('text'), 'label': label})

    if stage in (Stage.EDGE_EXTRACTION, Stage.EDGE_SEGMENTS, Stage.GRAPH_RECTIFICATION):
        edge_nets = net_of_edge(graph, list(nets)) if stage == Stage.GRAPH_RECTIFICATION else {}
        for edge in sorted(graph.edges, key=lambda e: e.id):
            net = edge_nets.get(edge.id)
            if stage == Stage.EDGE_SEGMENTS:
                color = net_color(edge.id + 1)
            elif net is not None:
                color = net_color(net)
            else:
                color = WIRE_COLOR
            wires.append({'points': ' '.join(f'{_number(x)},{_number(y)}' for x, y in edge.geometry.points),
                          'color': color, 'net': net})

    background = base64.b64encode(background_png).decode('ascii') if background_png else None
    text = _environment.get_template('overlay.svg.j2').render(width=width, height=height, stage=stage.value,
                                                             background=background, boxes=boxes, ports=ports,
                                                             wires=wires)
    return text.encode('utf-8')
