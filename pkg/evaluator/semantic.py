import numpy as np

from annotations.records import ImageRecord
from schematics.taxonomy import Taxonomy

BACKGROUND_LABEL = 0
WIRE_LABEL = 1


def class_labels(taxonomy: Taxonomy) -> dict:
    return {name: WIRE_LABEL + 1 + index for index, name in enumerate(taxonomy.names())}


def synthesize_semantic_map(record: ImageRecord, taxonomy: Taxonomy) -> np.ndarray:
    """Labels every stroke pixel with the class of the smallest box covering it; other strokes are wire."""
    if record.segmap is None:
        raise ValueError(f'{record.image_path}: a segmentation map is required')
    strokes = record.segmap.bits
    labels = np.where(strokes, WIRE_LABEL, BACKGROUND_LABEL).astype(np.uint8)
    lookup = class_labels(taxonomy)
    # larger boxes first so smaller ones overwrite them; equal areas: lower id last
    for obj in sorted(record.objects, key=lambda o: (-o.bbox.area, -o.id)):
        window = (slice(obj.bbox.ymin, obj.bbox.ymax), slice(obj.bbox.xmin, obj.bbox.xmax))
        region = labels[window]
        region[strokes[window]] = lookup.get(obj.cls.name, WIRE_LABEL)
    return labels
