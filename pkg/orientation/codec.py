"""Sine/cosine angle codes and symmetry-aware angle arithmetic.

Angles are degrees, counter-clockwise, in [0, 360). Classes whose library entry is
mirror-symmetric only carry orientation modulo 180.
"""
import math
from typing import NamedTuple

from schematics.library import SymbolLibrary
from schematics.models import ObjectClass

DEGENERATE_EPSILON = 1e-9


class DegenerateCodeError(ValueError):
    pass


class AngleCode(NamedTuple):
    sin: float
    cos: float


def wrap(deg: float, period: float = 360.0) -> float:
    value = math.fmod(float(deg), period)
    if value < 0:
        value += period
    # fmod of a tiny negative can round up to the period itself
    return 0.0 if value >= period else value


def encode(deg: float) -> AngleCode:
    if not math.isfinite(deg):
        raise ValueError(f'encode:: angle must be finite, got {deg}')
    theta = math.radians(wrap(deg))
    return AngleCode(math.sin(theta), math.cos(theta))


def decode(code: AngleCode) -> float:
    sin, cos = code
    if abs(sin) < DEGENERATE_EPSILON and abs(cos) < DEGENERATE_EPSILON:
        raise DegenerateCodeError(f'cannot decode near-zero angle code ({sin}, {cos})')
    return wrap(math.degrees(math.atan2(sin, cos)))


def period_of(cls: ObjectClass | str, lib: SymbolLibrary) -> float:
    return lib.get(cls).symmetry.period


def canonicalize(cls: ObjectClass | str, deg: float, lib: SymbolLibrary) -> float:
    return wrap(deg, period_of(cls, lib))


def angular_error(pred: float, truth: float, cls: ObjectClass | str, lib: SymbolLibrary) -> float:
    period = period_of(cls, lib)
    difference = wrap(pred - truth, period)
    return min(difference, period - difference)


def quantize_text_rotation(deg: float) -> float:
    """Texts are annotated in quarter turns."""
    return wrap(round(wrap(deg) / 90.0) * 90.0)
