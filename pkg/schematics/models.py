from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Category(str, Enum):
    SYMBOL = 'Symbol'
    TEXT = 'Text'
    JUNCTION = 'Junction'
    CORNER = 'Corner'
    CROSSOVER = 'Crossover'
    TERMINAL = 'Terminal'


ROTATABLE_CATEGORIES = (Category.SYMBOL, Category.TEXT, Category.TERMINAL)


class BoundingBox(BaseModel):
    """Pixel box, origin top-left, y downward. Covers xmin <= x < xmax, ymin <= y < ymax."""
    model_config = ConfigDict(frozen=True)

    xmin: int = Field(ge=0)
    ymin: int = Field(ge=0)
    xmax: int = Field(ge=0)
    ymax: int = Field(ge=0)

    @model_validator(mode='after')
    def _check_extent(self):
        if self.xmin >= self.xmax or self.ymin >= self.ymax:
            raise ValueError(f'degenerate box ({self.xmin},{self.ymin},{self.xmax},{self.ymax})')
        return self

    @classmethod
    def of(cls, xmin, ymin, xmax, ymax) -> 'BoundingBox':
        return cls(xmin=xmin, ymin=ymin, xmax=xmax, ymax=ymax)

    @property
    def width(self) -> int:
        return self.xmax - self.xmin

    @property
    def height(self) -> int:
        return self.ymax - self.ymin

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.xmin + self.xmax) / 2.0, (self.ymin + self.ymax) / 2.0

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.width, self.height))

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return self.xmin, self.ymin, self.xmax, self.ymax

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x < self.xmax and self.ymin <= y < self.ymax

    def contains_box(self, other: 'BoundingBox') -> bool:
        return (self.xmin <= other.xmin and self.ymin <= other.ymin
                and other.xmax <= self.xmax and other.ymax <= self.ymax)


class ObjectClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    category: Category


class AnnotatedObject(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    bbox: BoundingBox
    cls: ObjectClass
    rotation: Optional[float] = None
    text: Optional[str] = None
    confidence: Optional[float] = None

    @field_validator('rotation')
    @classmethod
    def _wrap_rotation(cls, value):
        if value is None:
            return None
        # annotations use 1..360, 360 folds onto 0
        return float(value) % 360.0

    @model_validator(mode='after')
    def _check_optionals(self):
        if self.rotation is not None and self.cls.category not in ROTATABLE_CATEGORIES:
            raise ValueError(f'object {self.id}: rotation not allowed for category {self.cls.category.value}')
        if self.text is not None and self.cls.category != Category.TEXT:
            raise ValueError(f'object {self.id}: text only allowed for Text objects')
        return self

    @property
    def category(self) -> Category:
        return self.cls.category


class Polyline(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: Tuple[Tuple[float, float], ...]

    @field_validator('points', mode='before')
    @classmethod
    def _as_float_pairs(cls, value):
        return tuple((float(x), float(y)) for x, y in value)

    @model_validator(mode='after')
    def _check_points(self):
        if len(self.points) < 2:
            raise ValueError('polyline needs at least 2 points')
        for a, b in zip(self.points, self.points[1:]):
            if a == b:
                raise ValueError(f'polyline repeats point {a}')
        return self

    @property
    def start(self) -> Tuple[float, float]:
        return self.points[0]

    @property
    def end(self) -> Tuple[float, float]:
        return self.points[-1]

    @property
    def length(self) -> float:
        pts = np.asarray(self.points)
        return float(np.hypot(*np.diff(pts, axis=0).T).sum())

    def reversed(self) -> 'Polyline':
        return Polyline(points=self.points[::-1])


def dedupe_points(points) -> list:
    """Drops consecutive repeats so the result is a valid Polyline point list."""
    out = []
    for p in points:
        p = (float(p[0]), float(p[1]))
        if not out or out[-1] != p:
            out.append(p)
    return out


@dataclass(frozen=True, eq=False)
class BitMap:
    """Binary raster, True = drafter stroke. `bits` is row-major with shape (height, width)."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f'bitmap must be 2-dimensional, got shape {bits.shape}')
        bits.setflags(write=False)
        object.__setattr__(self, 'bits', bits)

    @classmethod
    def blank(cls, width: int, height: int) -> 'BitMap':
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def stroke_count(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other):
        if not isinstance(other, BitMap):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.bits.shape, self.bits.tobytes()))
