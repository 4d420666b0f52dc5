"""Dataset evaluation: per-image metric collection on a bounded worker pool, then aggregation."""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from annotations.bitmaps import load_bitmap
from annotations.dataset import DatasetSample, iter_dataset
from annotations.records import ImageRecord
from annotations.splits import SplitSpec, default_split
from annotations.voc import parse_annotation
from circuitgraph.config import PipelineConfig
from circuitgraph.pipeline import build_graph, load_record
from evaluator.detection import DetectionAccumulator
from evaluator.graphs import GraphScore, compare_graphs
from evaluator.orientation import orientation_accuracy, orientation_pairs
from evaluator.segmentation import pixel_accuracy
from evaluator.text import cer, default_vocabulary, filter_texts
from schematics.geometry import iou
from schematics.library import SymbolLibrary
from schematics.models import AnnotatedObject, BitMap, Category
from schematics.taxonomy import Taxonomy
from utils.error_utils import error_dict

logger = logging.getLogger(__name__)


class EvaluationError(ValueError):
    pass


@dataclass
class ImageEvaluation:
    stem: str
    detections: Optional[DetectionAccumulator] = None
    orientation: List[Tuple[float, float, str]] = field(default_factory=list)
    text_pairs: List[Tuple[str, str]] = field(default_factory=list)
    truth_texts: List[str] = field(default_factory=list)
    pixel_accuracy: Optional[float] = None
    graph: Optional[GraphScore] = None
    failure: Optional[dict] = None


def text_pairs(pred: List[AnnotatedObject], truth: List[AnnotatedObject], iou_threshold: float) -> List[Tuple[str, str]]:
    """Pairs every truth text with the best-overlapping predicted text; a missing prediction reads as ''."""
    candidates = [o for o in pred if o.category == Category.TEXT]
    pairs, taken = [], set()
    for target in sorted((o for o in truth if o.category == Category.TEXT), key=lambda o: o.id):
        best, best_overlap = None, iou_threshold
        for prediction in candidates:
            if prediction.id in taken:
                continue
            overlap = iou(prediction.bbox, target.bbox)
            if overlap >= best_overlap and (best is None or overlap > best_overlap):
                best, best_overlap = prediction, overlap
        if best is not None:
            taken.add(best.id)
        pairs.append(((best.text or '') if best is not None else '', target.text or ''))
    return pairs


def _read_map(path: Optional[Path], config: PipelineConfig) -> Optional[BitMap]:
    if path is None or not path.exists():
        return None
    return load_bitmap(path.read_bytes(), config.threshold, config.polarity)


def evaluate_sample(sample: DatasetSample, config: PipelineConfig, taxonomy: Taxonomy, lib: SymbolLibrary,
                    predictions: Optional[Path] = None) -> ImageEvaluation:
    result = ImageEvaluation(stem=sample.stem)
    try:
        truth = parse_annotation(sample.annotation_path.read_bytes(), taxonomy, drafter=sample.drafter)
        truth_map = _read_map(sample.segmap_path, config)
        if predictions is None:
            pred, pred_map = truth, truth_map
        else:
            json_path, xml_path = predictions / f'{sample.stem}.json', predictions / f'{sample.stem}.xml'
            source = json_path if json_path.exists() else xml_path if xml_path.exists() else None
            pred = load_record(source, taxonomy) if source is not None else ImageRecord(
                image_path=truth.image_path, width=truth.width, height=truth.height)
            pred_map = _read_map(predictions / f'{sample.stem}.png', config)

        truth_objects = filter_texts(truth.objects, config.max_text_length)
        pred_objects = filter_texts(pred.objects, config.max_text_length)
        result.detections = DetectionAccumulator(config.iou_threshold).add(pred.objects, truth.objects)
        result.orientation = orientation_pairs(pred_objects, truth_objects, config.iou_threshold, config.quantize_texts,
                                              lib=lib)
        result.text_pairs = text_pairs(pred_objects, truth_objects, config.iou_threshold)
        result.truth_texts = [o.text for o in truth_objects if o.category == Category.TEXT and o.text]

        if truth_map is not None:
            if pred_map is not None:
                result.pixel_accuracy = pixel_accuracy(pred_map, truth_map)
            truth_graph, truth_nets = build_graph(truth, truth_map, config, lib)
            pred_graph, pred_nets = build_graph(pred, pred_map if pred_map is not None else truth_map, config, lib)
            result.graph = compare_graphs(pred_graph, truth_graph, config.iou_threshold, pred_nets, truth_nets)
    except Exception as e:
        logger.error(f'evaluate_sample:: {sample.annotation_path}: {e}')
        result.failure = error_dict(f'failed to evaluate {sample.annotation_path}', e, image=sample.stem)
    return result


def _mean(values) -> Optional[float]:
    values = list(values)
    return float(np.mean(values)) if values else None


def aggregate(results: List[ImageEvaluation], config: PipelineConfig, lib: SymbolLibrary) -> dict:
    detections = DetectionAccumulator(config.iou_threshold)
    for result in results:
        if result.detections is not None:
            detections.merge(result.detections)
    detection = detections.result(config.ap_mode).to_dict() if detections.truth_counts else None
    if detection is not None:
        detection.update(iou_threshold=config.iou_threshold, ap_mode=config.ap_mode.value)

    pairs = [pair for result in results for pair in result.orientation]
    texts = [pair for result in results for pair in result.text_pairs]
    vocabulary = default_vocabulary()
    unknown = set()
    for result in results:
        for text in result.truth_texts:
            unknown |= vocabulary.unknown(text)
    graphs = [result.graph for result in results if result.graph is not None]
    accuracies = [result.pixel_accuracy for result in results if result.pixel_accuracy is not None]

    return {
        'images': len(results),
        'detection': detection,
        'orientation': {'accuracy': None if not pairs else orientation_accuracy(pairs, lib, config.orientation_threshold),
                        'pairs': len(pairs), 'threshold': config.orientation_threshold},
        'text': {'character_error_rate': _mean(cer(p, t) for p, t in texts), 'samples': len(texts),
                 'max_length': config.max_text_length, 'unknown_characters': sorted(unknown)},
        'segmentation': {'pixel_accuracy': _mean(accuracies), 'images': len(accuracies)},
        'graph': {'node_precision': _mean(g.node_precision for g in graphs),
                  'node_recall': _mean(g.node_recall for g in graphs),
                  'edge_precision': _mean(g.edge_precision for g in graphs),
                  'edge_recall': _mean(g.edge_recall for g in graphs),
                  'net_delta': sum(g.net_delta for g in graphs) if graphs else None,
                  'images': len(graphs)},
        'failures': [result.failure for result in results if result.failure is not None],
    }


def evaluate_dataset(root: Path, config: PipelineConfig, taxonomy: Taxonomy, lib: SymbolLibrary,
                     predictions: Optional[Path] = None, split: Optional[SplitSpec] = None,
                     progress: bool = False) -> dict:
    split = split or default_split()
    drafters = split.drafters(config.split)
    samples = list(iter_dataset(root, drafters))
    if not samples:
        raise EvaluationError(f'split {config.split!r} (drafters {sorted(drafters)}) selects no annotations under {root}')
    logger.info(f'evaluate_dataset:: {len(samples)} image(s) from drafters {sorted(drafters)}')

    jobs = (delayed(evaluate_sample)(sample, config, taxonomy, lib, predictions)
            for sample in tqdm(samples, disable=not progress, desc='evaluate'))
    results = Parallel(n_jobs=config.workers or 1, prefer='threads')(jobs)
    report = aggregate(results, config, lib)
    report['split'] = config.split
    return report
