"""Run-level tunables. Config files are flat YAML mappings keyed like the CLI flags."""
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from annotations.bitmaps import Polarity
from annotations.splits import SPLIT_NAMES
from binarizer.classical import DEFAULT_K, DEFAULT_WINDOW
from binarizer.tiling import DEFAULT_PATCH
from edges.components import DEFAULT_MARGIN, DEFAULT_MIN_BLOB_SIZE
from evaluator.detection import APMode
from exporter.netlist import DEFAULT_PREFIXES
from graph_builder.rectify import DEFAULT_EPSILON, DEFAULT_SNAP
from utils.yaml_utils import YamlLoadError, load_yaml

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


class PipelineConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    # edge extraction
    margin: int = Field(DEFAULT_MARGIN, ge=0)
    min_blob_size: int = Field(DEFAULT_MIN_BLOB_SIZE, ge=1)
    # segmentation maps and binarization
    threshold: int = Field(128, ge=0, le=255)
    polarity: Polarity = Polarity.LIGHT
    window: int = Field(DEFAULT_WINDOW, ge=3)
    k: float = Field(DEFAULT_K, gt=0)
    cutoff: float = Field(0.5, ge=0.0, le=1.0)
    patch: int = Field(DEFAULT_PATCH, gt=0)
    # post-processing
    epsilon: float = Field(DEFAULT_EPSILON, gt=0)
    snap: float = Field(DEFAULT_SNAP, ge=0, lt=45)
    text_distance: Optional[float] = Field(None, gt=0)
    include_open_nets: bool = False
    prefixes: Dict[str, str] = Field(default_factory=lambda: dict(DEFAULT_PREFIXES))
    # data
    library: Optional[Path] = None
    taxonomy: Optional[Path] = None
    split: str = 'test'
    # evaluation
    iou_threshold: float = Field(0.5, gt=0, le=1)
    orientation_threshold: float = Field(5.0, gt=0)
    max_text_length: int = Field(6, ge=1)
    ap_mode: APMode = APMode.ALL_POINTS
    quantize_texts: bool = False
    # run
    workers: Optional[int] = Field(None, ge=1)
    max_warnings: Optional[int] = Field(None, ge=0)
    seed: Optional[int] = None

    @field_validator('window')
    @classmethod
    def _odd_window(cls, value):
        if value % 2 == 0:
            raise ValueError(f'window must be odd, got {value}')
        return value

    @field_validator('split')
    @classmethod
    def _known_split(cls, value):
        if value not in SPLIT_NAMES:
            raise ValueError(f'split must be one of {", ".join(SPLIT_NAMES)}')
        return value


def _normalize(raw: Dict[str, Any]) -> Dict[str, Any]:
    return {str(key).lstrip('-').replace('-', '_'): value for key, value in raw.items()}


def load_config_file(path: Path) -> Dict[str, Any]:
    try:
        raw = load_yaml(path) or {}
    except YamlLoadError as e:
        raise ConfigError(str(e)) from e
    if not isinstance(raw, dict):
        raise ConfigError(f'{path}: config file must be a mapping of flag names to values')
    return _normalize(raw)


def build_config(path: Optional[Path] = None, **overrides) -> PipelineConfig:
    """File values first, then every override that is not None."""
    values = load_config_file(path) if path is not None else {}
    values.update({key: value for key, value in _normalize(overrides).items() if value is not None})
    try:
        return PipelineConfig(**values)
    except ValidationError as e:
        raise ConfigError(f'invalid configuration: {e}') from e
