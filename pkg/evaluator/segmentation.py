import numpy as np

from evaluator.errors import DimensionMismatchError, UndefinedMetricError
from schematics.models import BitMap


def pixel_accuracy(pred: BitMap, truth: BitMap) -> float:
    if pred.bits.shape != truth.bits.shape:
        raise DimensionMismatchError(f'prediction is {pred.width}x{pred.height}, truth is {truth.width}x{truth.height}')
    if truth.bits.size == 0:
        raise UndefinedMetricError('pixel accuracy of an empty map is undefined')
    return float(np.mean(pred.bits == truth.bits))
