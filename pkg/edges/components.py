import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy import ndimage
from skimage import measure

from schematics.geometry import inflate
from schematics.models import AnnotatedObject, BitMap, BoundingBox

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 4
DEFAULT_MIN_BLOB_SIZE = 8


@dataclass(frozen=True, eq=False)
class Blob:
    """8-connected stroke component. `pixels` is an (N, 2) integer array of (x, y)."""
    id: int
    pixels: np.ndarray
    bbox: BoundingBox

    @property
    def size(self) -> int:
        return len(self.pixels)

    def pixel_set(self) -> frozenset:
        return frozenset((int(x), int(y)) for x, y in self.pixels)


def mask_objects(bitmap: BitMap, objects: Sequence[AnnotatedObject], margin: int = DEFAULT_MARGIN) -> BitMap:
    bits = bitmap.bits.copy()
    bounds = (bitmap.width, bitmap.height)
    for obj in objects:
        box = inflate(obj.bbox, margin, bounds)
        bits[box.ymin:box.ymax, box.xmin:box.xmax] = False
    return BitMap(bits)


def label_components(bitmap: BitMap, min_size: int = DEFAULT_MIN_BLOB_SIZE) -> List[Blob]:
    labels = measure.label(bitmap.bits, connectivity=2, background=0)
    if labels.max() == 0:
        return []

    # first flat index of each label is its topmost-leftmost pixel
    values, first_index = np.unique(labels.ravel(), return_index=True)
    order = [int(v) for _, v in sorted(zip(first_index, values)) if v != 0]
    slices = ndimage.find_objects(labels)

    blobs, dropped = [], 0
    for label in order:
        window = slices[label - 1]
        ys, xs = np.nonzero(labels[window] == label)
        if len(xs) < min_size:
            dropped += 1
            continue
        xs = xs + window[1].start
        ys = ys + window[0].start
        bbox = BoundingBox.of(int(xs.min()), int(ys.min()), int(xs.max()) + 1, int(ys.max()) + 1)
        blobs.append(Blob(id=len(blobs), pixels=np.stack([xs, ys], axis=1).astype(np.int64), bbox=bbox))
    if dropped:
        logger.debug(f'label_components:: dropped {dropped} component(s) below {min_size} px')
    return blobs
