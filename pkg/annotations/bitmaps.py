import io
import logging
from enum import Enum

import numpy as np
from PIL import Image, UnidentifiedImageError

from schematics.models import BitMap

logger = logging.getLogger(__name__)


class BitmapDecodeError(IOError):
    pass


class Polarity(str, Enum):
    # LIGHT: bright pixels are strokes (white-on-black segmentation maps)
    LIGHT = 'light'
    DARK = 'dark'


def decode_grayscale(image_bytes: bytes) -> np.ndarray:
    """Decodes any Pillow-readable image to an 8-bit luminance array of shape (height, width)."""
    try:
        with Image.open(io.BytesIO(image_bytes)) as image:
            image.load()
            return np.asarray(image.convert('L'), dtype=np.uint8).copy()
    except (UnidentifiedImageError, OSError, ValueError) as e:
        raise BitmapDecodeError(f'cannot decode image: {e}')


def load_bitmap(png_bytes: bytes, threshold: int = 128, polarity: Polarity = Polarity.LIGHT) -> BitMap:
    if not 0 <= threshold <= 255:
        raise ValueError(f'load_bitmap:: threshold must be within [0, 255], got {threshold}')
    luminance = decode_grayscale(png_bytes)
    if Polarity(polarity) == Polarity.LIGHT:
        bits = luminance >= threshold
    else:
        bits = luminance < threshold
    logger.debug(f'load_bitmap:: {luminance.shape[1]}x{luminance.shape[0]} map, {int(bits.sum())} stroke pixels')
    return BitMap(bits)


def encode_bitmap(bitmap: BitMap) -> bytes:
    buffer = io.BytesIO()
    Image.fromarray(bitmap.bits.astype(np.uint8) * 255).save(buffer, format='PNG')
    return buffer.getvalue()


def encode_grayscale(image: np.ndarray) -> bytes:
    buffer = io.BytesIO()
    Image.fromarray(np.asarray(image, dtype=np.uint8)).save(buffer, format='PNG')
    return buffer.getvalue()
