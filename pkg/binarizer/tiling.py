"""Patchwise inference for pixel classifiers with a fixed input size."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Protocol, Tuple

import numpy as np
from joblib import Parallel, delayed

from schematics.models import BitMap

logger = logging.getLogger(__name__)

DEFAULT_PATCH = 256


class TilingError(ValueError):
    pass


class ClassifierContractError(ValueError):
    pass


class Anchor(str, Enum):
    LEFT_TOP = 'left-top'
    RIGHT_TOP = 'right-top'
    BOTTOM_LEFT = 'bottom-left'
    # closes the bottom-right remainder the first three passes leave uncovered
    BOTTOM_RIGHT = 'bottom-right'


@dataclass(frozen=True)
class Tile:
    x: int
    y: int
    anchor: Anchor


@dataclass(frozen=True)
class TilePlan:
    patch: int
    tiles: Tuple[Tile, ...]
    width: int
    height: int

    @property
    def origins(self) -> set:
        return {(t.x, t.y) for t in self.tiles}

    def coverage(self) -> np.ndarray:
        counts = np.zeros((self.height, self.width), dtype=np.int32)
        for t in self.tiles:
            counts[t.y:t.y + self.patch, t.x:t.x + self.patch] += 1
        return counts


class PixelClassifier(Protocol):
    def __call__(self, patch: np.ndarray) -> np.ndarray:
        """Maps a patch x patch grayscale array to stroke probabilities in [0, 1]."""


def plan_tiles(width: int, height: int, patch: int = DEFAULT_PATCH) -> TilePlan:
    if patch <= 0:
        raise TilingError(f'patch size must be positive, got {patch}')
    if width < patch or height < patch:
        raise TilingError(f'image {width}x{height} is smaller than the {patch}px patch; pad it to the patch size '
                          f'first (segment_image does this with edge replication)')
    columns, rows = width // patch, height // patch
    xs_left = [i * patch for i in range(columns)]
    xs_right = [width - patch - i * patch for i in range(columns)]
    ys_top = [j * patch for j in range(rows)]
    ys_bottom = [height - patch - j * patch for j in range(rows)]
    passes = (
        (Anchor.LEFT_TOP, xs_left, ys_top),
        (Anchor.RIGHT_TOP, xs_right, ys_top),
        (Anchor.BOTTOM_LEFT, xs_left, ys_bottom),
        (Anchor.BOTTOM_RIGHT, xs_right, ys_bottom),
    )
    seen, tiles = set(), []
    for anchor, xs, ys in passes:
        for y in ys:
            for x in xs:
                if (x, y) not in seen:
                    seen.add((x, y))
                    tiles.append(Tile(x, y, anchor))
    logger.debug(f'plan_tiles:: {width}x{height} with patch {patch} -> {len(tiles)} tiles')
    return TilePlan(patch=patch, tiles=tuple(tiles), width=width, height=height)


def _classify(classifier: PixelClassifier, image: np.ndarray, tile: Tile, patch: int) -> np.ndarray:
    window = image[tile.y:tile.y + patch, tile.x:tile.x + patch]
    prediction = np.asarray(classifier(window), dtype=np.float64)
    if prediction.shape != window.shape:
        raise ClassifierContractError(f'classifier returned shape {prediction.shape} for a {window.shape} patch '
                                      f'at ({tile.x}, {tile.y})')
    return prediction


def run_tiled(image: np.ndarray, classifier: PixelClassifier, plan: TilePlan, n_jobs: Optional[int] = None) -> np.ndarray:
    """Averages the predictions of every tile covering a pixel."""
    image = np.asarray(image)
    if image.shape != (plan.height, plan.width):
        raise TilingError(f'plan is for {plan.width}x{plan.height}, image is {image.shape[1]}x{image.shape[0]}')
    if n_jobs and n_jobs != 1:
        predictions = Parallel(n_jobs=n_jobs, prefer='threads')(
            delayed(_classify)(classifier, image, tile, plan.patch) for tile in plan.tiles)
    else:
        predictions = [_classify(classifier, image, tile, plan.patch) for tile in plan.tiles]

    sums = np.zeros(image.shape, dtype=np.float64)
    counts = np.zeros(image.shape, dtype=np.int32)
    for tile, prediction in zip(plan.tiles, predictions):
        sums[tile.y:tile.y + plan.patch, tile.x:tile.x + plan.patch] += prediction
        counts[tile.y:tile.y + plan.patch, tile.x:tile.x + plan.patch] += 1
    return sums / counts


def threshold_map(probabilities: np.ndarray, cutoff: float = 0.5) -> BitMap:
    if not 0.0 <= cutoff <= 1.0:
        raise ValueError(f'threshold_map:: cutoff must be within [0, 1], got {cutoff}')
    return BitMap(np.asarray(probabilities) >= cutoff)


def segment_image(image: np.ndarray, classifier: PixelClassifier, patch: int = DEFAULT_PATCH,
                  n_jobs: Optional[int] = None) -> np.ndarray:
    image = np.asarray(image)
    height, width = image.shape
    padded = np.pad(image, ((0, max(0, patch - height)), (0, max(0, patch - width))), mode='edge')
    if padded.shape != image.shape:
        logger.info(f'segment_image:: padded {width}x{height} image to {padded.shape[1]}x{padded.shape[0]}')
    probabilities = run_tiled(padded, classifier, plan_tiles(padded.shape[1], padded.shape[0], patch), n_jobs=n_jobs)
    return probabilities[:height, :width]
