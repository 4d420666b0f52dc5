from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from edges.components import DEFAULT_MARGIN, Blob
from schematics.geometry import inflate
from schematics.models import AnnotatedObject


class Contact(BaseModel):
    model_config = ConfigDict(frozen=True)

    blob_id: int
    object_id: int
    point: Tuple[int, int]


def find_contacts(blob: Blob, objects: Sequence[AnnotatedObject], margin: int = DEFAULT_MARGIN) -> List[Contact]:
    """One contact per object whose box, grown by margin + 1, holds blob pixels.

    The extra pixel makes a blob that was cut back by `mask_objects` with the same margin
    count as touching: its end pixels are 8-adjacent to the removed area.
    """
    xs, ys = blob.pixels[:, 0], blob.pixels[:, 1]
    contacts = []
    for obj in sorted(objects, key=lambda o: o.id):
        box = inflate(obj.bbox, margin + 1)
        if (box.xmax <= blob.bbox.xmin or blob.bbox.xmax <= box.xmin
                or box.ymax <= blob.bbox.ymin or blob.bbox.ymax <= box.ymin):
            continue
        inside = (xs >= box.xmin) & (xs < box.xmax) & (ys >= box.ymin) & (ys < box.ymax)
        if not inside.any():
            continue
        cx, cy = obj.bbox.center
        candidates = blob.pixels[inside]
        distances = np.hypot(candidates[:, 0] - cx, candidates[:, 1] - cy)
        # ties resolved by scanline order
        best = np.lexsort((candidates[:, 0], candidates[:, 1], distances))[0]
        x, y = candidates[best]
        contacts.append(Contact(blob_id=blob.id, object_id=obj.id, point=(int(x), int(y))))
    return contacts
