"""Object detection scoring: greedy IoU matching and average precision per class."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple

import numpy as np

from schematics.geometry import iou
from schematics.models import AnnotatedObject

logger = logging.getLogger(__name__)

DEFAULT_IOU_THRESHOLD = 0.5


class APMode(str, Enum):
    ALL_POINTS = 'all-points'
    ELEVEN_POINT = '11-point'


@dataclass(frozen=True)
class ClassResult:
    true_positives: int
    false_positives: int
    false_negatives: int
    average_precision: float


@dataclass(frozen=True)
class DetectionMatchResult:
    per_class: Dict[str, ClassResult]
    map: float

    def to_dict(self) -> dict:
        return {
            'map': self.map,
            'classes': {name: {'tp': r.true_positives, 'fp': r.false_positives, 'fn': r.false_negatives,
                               'ap': r.average_precision} for name, r in sorted(self.per_class.items())},
        }


def average_precision(hits: Sequence[bool], truth_count: int, mode: APMode = APMode.ALL_POINTS) -> float:
    """`hits` are ranked by descending confidence, True for a matched prediction."""
    if truth_count == 0 or len(hits) == 0:
        return 0.0
    flags = np.asarray(hits, dtype=float)
    true_positives = np.cumsum(flags)
    precision = true_positives / np.arange(1, len(flags) + 1)
    recall = true_positives / truth_count
    if APMode(mode) == APMode.ELEVEN_POINT:
        levels = np.linspace(0.0, 1.0, 11)
        return float(np.mean([precision[recall >= level].max(initial=0.0) for level in levels]))
    # precision envelope, then sum over recall steps
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    steps = np.diff(np.concatenate([[0.0], recall]))
    return float(np.sum(steps * envelope))


@dataclass
class DetectionAccumulator:
    iou_threshold: float = DEFAULT_IOU_THRESHOLD
    scored: Dict[str, List[Tuple[float, int, bool]]] = field(default_factory=dict)
    truth_counts: Dict[str, int] = field(default_factory=dict)
    _order: int = 0

    def add(self, pred: Sequence[AnnotatedObject], truth: Sequence[AnnotatedObject]):
        classes = {o.cls.name for o in pred} | {o.cls.name for o in truth}
        for name in sorted(classes):
            candidates = sorted((o for o in pred if o.cls.name == name),
                                key=lambda o: (-(1.0 if o.confidence is None else o.confidence), o.id))
            targets = [o for o in truth if o.cls.name == name]
            self.truth_counts[name] = self.truth_counts.get(name, 0) + len(targets)
            taken = set()
            entries = self.scored.setdefault(name, [])
            for prediction in candidates:
                best, best_iou = None, self.iou_threshold
                for index, target in enumerate(targets):
                    if index in taken:
                        continue
                    overlap = iou(prediction.bbox, target.bbox)
                    if overlap >= best_iou and (best is None or overlap > best_iou):
                        best, best_iou = index, overlap
                if best is not None:
                    taken.add(best)
                confidence = 1.0 if prediction.confidence is None else prediction.confidence
                entries.append((confidence, self._order, best is not None))
                self._order += 1
        return self

    def merge(self, other: 'DetectionAccumulator') -> 'DetectionAccumulator':
        for name, entries in other.scored.items():
            self.scored.setdefault(name, []).extend((c, self._order + o, h) for c, o, h in entries)
        for name, count in other.truth_counts.items():
            self.truth_counts[name] = self.truth_counts.get(name, 0) + count
        self._order += other._order
        return self

    def result(self, mode: APMode = APMode.ALL_POINTS) -> DetectionMatchResult:
        per_class = {}
        for name in sorted(set(self.scored) | set(self.truth_counts)):
            ranked = sorted(self.scored.get(name, []), key=lambda entry: (-entry[0], entry[1]))
            hits = [hit for _, _, hit in ranked]
            tp = sum(hits)
            truth = self.truth_counts.get(name, 0)
            per_class[name] = ClassResult(true_positives=tp, false_positives=len(hits) - tp,
                                          false_negatives=truth - tp,
                                          average_precision=average_precision(hits, truth, mode))
        present = [r.average_precision for name, r in per_class.items() if self.truth_counts.get(name, 0) > 0]
        mean = float(np.mean(present)) if present else 0.0
        return DetectionMatchResult(per_class=per_class, map=mean)


def match_detections(pred: Sequence[AnnotatedObject], truth: Sequence[AnnotatedObject],
                     iou_threshold: float = DEFAULT_IOU_THRESHOLD,
                     mode: APMode = APMode.ALL_POINTS) -> DetectionMatchResult:
    return DetectionAccumulator(iou_threshold).add(pred, truth).result(mode)
