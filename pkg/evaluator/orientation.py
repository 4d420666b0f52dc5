import logging
from typing import List, Optional, Sequence, Tuple

from orientation.codec import angular_error, quantize_text_rotation
from evaluator.errors import UndefinedMetricError
from schematics.geometry import iou
from schematics.library import SymbolLibrary
from schematics.models import AnnotatedObject, Category

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 5.0


def orientation_accuracy(pairs: Sequence[Tuple[float, float, str]], lib: SymbolLibrary,
                         threshold: float = DEFAULT_THRESHOLD) -> float:
    """Share of (prediction, truth, class) pairs whose symmetry-aware error is within `threshold` degrees."""
    if threshold <= 0:
        raise ValueError(f'orientation_accuracy:: threshold must be > 0, got {threshold}')
    if not pairs:
        raise UndefinedMetricError('orientation accuracy of an empty set is undefined')
    correct = sum(1 for pred, truth, cls in pairs if angular_error(pred, truth, cls, lib) <= threshold)
    return correct / len(pairs)


def orientation_pairs(pred: Sequence[AnnotatedObject], truth: Sequence[AnnotatedObject], iou_threshold: float = 0.5,
                      quantize_texts: bool = False, lib: Optional[SymbolLibrary] = None) -> List[Tuple[float, float, str]]:
    """Pairs rotations of same-class objects whose boxes overlap best, each truth object used once.

    With `lib` given, pairs of classes the library has no symmetry for are left out.
    """
    pairs, taken = [], set()
    for prediction in sorted(pred, key=lambda o: o.id):
        if prediction.rotation is None:
            continue
        best, best_overlap = None, iou_threshold
        for target in truth:
            if target.id in taken or target.rotation is None or target.cls.name != prediction.cls.name:
                continue
            overlap = iou(prediction.bbox, target.bbox)
            if overlap >= best_overlap and (best is None or overlap > best_overlap):
                best, best_overlap = target, overlap
        if best is None:
            continue
        taken.add(best.id)
        if lib is not None and best.cls.name not in lib:
            logger.warning(f'orientation_pairs:: no symmetry for class {best.cls.name!r}, skipping object {best.id}')
            continue
        rotation = prediction.rotation
        if quantize_texts and prediction.category == Category.TEXT:
            rotation = quantize_text_rotation(rotation)
        pairs.append((rotation, best.rotation, prediction.cls.name))
    return pairs
