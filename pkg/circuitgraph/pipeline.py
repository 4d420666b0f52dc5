"""End-to-end extraction: stroke map and perception in, circuit graph and exports out."""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from annotations.bitmaps import decode_grayscale, encode_grayscale, load_bitmap
from annotations.interchange import read_perception
from annotations.records import ImageRecord
from annotations.voc import parse_annotation
from binarizer.classical import SauvolaClassifier
from binarizer.tiling import segment_image, threshold_map
from circuitgraph.config import PipelineConfig
from edges.extractor import extract_edges
from exporter.bundle import ExportBundle, export_bundle
from exporter.overlay import Stage, render_overlay
from graph_builder.assembly import assemble
from graph_builder.corners import collapse_corners
from graph_builder.hops import resolve_hops
from graph_builder.models import CircuitGraph, Net, TextLabel
from graph_builder.nets import derive_nets
from graph_builder.ports import assign_graph_ports
from graph_builder.rectify import rectify_graph
from graph_builder.texts import associate_texts
from schematics.diagnostics import Diagnostic
from schematics.library import SymbolLibrary
from schematics.models import BitMap, Category
from schematics.taxonomy import Taxonomy
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)

PERCEPTION_CONTRACT = ('no perception input given: objects must come from a VOC annotation (.xml) or a perception '
                       'interchange file (.json) with image, width, height and objects[id, class, bbox, rotation, '
                       'text, confidence]; there is no built-in detector')


class PerceptionError(ValueError):
    pass


def load_record(path: Optional[Path], taxonomy: Taxonomy, image_path: Optional[str] = None) -> ImageRecord:
    if path is None:
        raise PerceptionError(PERCEPTION_CONTRACT)
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == '.xml':
        return parse_annotation(data, taxonomy, image_path=image_path)
    if path.suffix.lower() == '.json':
        return read_perception(data, taxonomy)
    raise PerceptionError(f'{path}: unsupported perception format {path.suffix!r}; {PERCEPTION_CONTRACT}')


@log_stage
def binarize_image(gray: np.ndarray, config: PipelineConfig) -> BitMap:
    classifier = SauvolaClassifier(window=config.window, k=config.k)
    probabilities = segment_image(gray, classifier, config.patch, n_jobs=config.workers)
    return threshold_map(probabilities, config.cutoff)


def stroke_map(config: PipelineConfig, map_png: Optional[bytes] = None, image_bytes: Optional[bytes] = None) -> BitMap:
    """A provided segmentation map wins; otherwise the image is binarized."""
    if map_png is not None:
        return load_bitmap(map_png, config.threshold, config.polarity)
    if image_bytes is None:
        raise PerceptionError('either a segmentation map or an image to binarize is required')
    return binarize_image(decode_grayscale(image_bytes), config)


@dataclass
class ExtractionResult:
    graph: CircuitGraph
    nets: List[Net]
    bundle: ExportBundle
    stages: Dict[Stage, bytes] = field(default_factory=dict)

    @property
    def diagnostics(self) -> List[Diagnostic]:
        return self.graph.diagnostics


def _with_texts(graph: CircuitGraph, texts) -> CircuitGraph:
    labels = [TextLabel(id=t.id, text=t.text, bbox=t.bbox) for t in texts]
    return graph.model_copy(update={'annotations': labels, 'edges': []})


def build_graph(record: ImageRecord, bitmap: BitMap, config: PipelineConfig, lib: SymbolLibrary,
                stages: Optional[Dict[Stage, CircuitGraph]] = None):
    """Runs edge extraction and every graph stage; intermediate graphs land in `stages` when given."""
    if (bitmap.width, bitmap.height) != (record.width, record.height):
        raise PerceptionError(f'stroke map is {bitmap.width}x{bitmap.height} but the annotation describes '
                              f'{record.width}x{record.height}')
    texts = [o for o in record.objects if o.category == Category.TEXT]
    wiring = [o for o in record.objects if o.category != Category.TEXT]

    segments, diagnostics = extract_edges(bitmap, record.objects, config.margin, config.min_blob_size)
    graph = assemble(wiring, segments, diagnostics)
    if stages is not None:
        stages[Stage.DETECTION] = _with_texts(graph, texts)
        stages[Stage.ORIENTATION_TEXT] = stages[Stage.DETECTION]
        stages[Stage.EDGE_EXTRACTION] = graph
    graph = collapse_corners(resolve_hops(graph))
    if stages is not None:
        stages[Stage.EDGE_SEGMENTS] = graph
    graph = rectify_graph(assign_graph_ports(graph, lib), config.epsilon, config.snap)
    nets = derive_nets(graph, include_open=config.include_open_nets)
    graph = associate_texts(graph, texts, config.text_distance)
    if stages is not None:
        stages[Stage.GRAPH_RECTIFICATION] = graph
    return graph, nets


@log_stage
def run_extraction(record: ImageRecord, bitmap: BitMap, config: PipelineConfig, lib: SymbolLibrary,
                   image_name: Optional[str] = None, gray: Optional[np.ndarray] = None,
                   debug_stages: bool = False) -> ExtractionResult:
    stage_graphs = {} if debug_stages else None
    graph, nets = build_graph(record, bitmap, config, lib, stage_graphs)
    size = (record.width, record.height)
    bundle = export_bundle(graph, nets, lib, image=image_name or record.image_path, size=size,
                           prefixes=config.prefixes)

    overlays = {}
    if debug_stages:
        background = encode_grayscale(gray) if gray is not None else None
        overlays[Stage.RAW] = render_overlay(*size, CircuitGraph(), Stage.RAW, background_png=background)
        for stage, staged in stage_graphs.items():
            overlays[stage] = render_overlay(*size, staged, stage, nets if stage == Stage.GRAPH_RECTIFICATION else (),
                                             background_png=background)
    logger.info(f'run_extraction:: {record.image_path}: {len(graph.nodes)} node(s), {len(graph.edges)} edge(s), '
                f'{len(nets)} net(s), {len(graph.diagnostics)} diagnostic(s)')
    return ExtractionResult(graph=graph, nets=nets, bundle=bundle, stages=overlays)
