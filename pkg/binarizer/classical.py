"""Adaptive-threshold stroke extraction, the default classifier when no segmenter output is supplied."""
import logging
from dataclasses import dataclass

import numpy as np
from skimage.filters import threshold_sauvola
from skimage.morphology import binary_opening, disk

from annotations.bitmaps import Polarity

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 31
DEFAULT_K = 0.2
# dynamic range of the standard deviation for 8-bit input
SAUVOLA_R = 128.0


def binarize_classical(image: np.ndarray, window: int = DEFAULT_WINDOW, k: float = DEFAULT_K,
                       polarity: Polarity = Polarity.DARK) -> np.ndarray:
    """Sauvola local threshold followed by an opening with a radius-1 disk.

    `polarity` names the stroke tone of the input: DARK for pen on paper, LIGHT for
    chalk-on-board style images, which are inverted first. Returns 1.0 on stroke pixels.
    """
    if window < 3 or window % 2 == 0:
        raise ValueError(f'binarize_classical:: window must be odd and >= 3, got {window}')
    gray = np.asarray(image, dtype=np.float64)
    if Polarity(polarity) == Polarity.LIGHT:
        gray = 255.0 - gray
    threshold = threshold_sauvola(gray, window_size=window, k=k, r=SAUVOLA_R)
    strokes = gray <= threshold
    strokes = binary_opening(strokes, footprint=disk(1))
    logger.debug(f'binarize_classical:: {int(strokes.sum())} stroke pixels at window={window} k={k}')
    return strokes.astype(np.float64)


@dataclass(frozen=True)
class SauvolaClassifier:
    window: int = DEFAULT_WINDOW
    k: float = DEFAULT_K
    polarity: Polarity = Polarity.DARK

    def __call__(self, patch: np.ndarray) -> np.ndarray:
        return binarize_classical(patch, window=self.window, k=self.k, polarity=self.polarity)
