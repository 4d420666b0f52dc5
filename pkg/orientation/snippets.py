"""Crops fed to external orientation and text models."""
import numpy as np
from PIL import Image

from schematics.models import BoundingBox

SNIPPET_SIZE = 50
TEXT_HEIGHT = 50
TEXT_WIDTH = 350


def _crop(image: np.ndarray, bbox: BoundingBox) -> Image.Image:
    return Image.fromarray(np.asarray(image, dtype=np.uint8)[bbox.ymin:bbox.ymax, bbox.xmin:bbox.xmax])


def extract_snippet(image: np.ndarray, bbox: BoundingBox, size: int = SNIPPET_SIZE) -> np.ndarray:
    """Square size x size crop of the box, bilinear resampling, aspect ratio not kept."""
    return np.asarray(_crop(image, bbox).resize((size, size), Image.BILINEAR), dtype=np.uint8)


def extract_text_snippet(image: np.ndarray, bbox: BoundingBox, height: int = TEXT_HEIGHT,
                         width: int = TEXT_WIDTH) -> np.ndarray:
    crop = _crop(image, bbox)
    scaled_width = max(1, round(crop.width * height / crop.height))
    scaled = np.asarray(crop.resize((scaled_width, height), Image.BILINEAR), dtype=np.uint8)[:, :width]
    canvas = np.zeros((height, width), dtype=np.uint8)
    canvas[:, :scaled.shape[1]] = scaled
    return canvas
