import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

logger = logging.getLogger(__name__)

DRAFTER_PATTERN = re.compile(r'drafter_(\d+)')
IMAGE_SUFFIXES = ('.jpg', '.jpeg', '.png', '.JPG', '.JPEG', '.PNG')


@dataclass(frozen=True)
class DatasetSample:
    drafter: int
    annotation_path: Path
    image_path: Optional[Path]
    segmap_path: Optional[Path]

    @property
    def stem(self) -> str:
        return self.annotation_path.stem


def drafter_from_path(path) -> Optional[int]:
    matches = DRAFTER_PATTERN.findall(str(path or ''))
    return int(matches[-1]) if matches else None


def _sibling(directory: Path, stem: str, suffixes) -> Optional[Path]:
    for suffix in suffixes:
        candidate = directory / f'{stem}{suffix}'
        if candidate.exists():
            return candidate
    return None


def iter_dataset(root, drafters: Iterable[int], annotations_dir: str = 'annotations', images_dir: str = 'images',
                 segmaps_dir: str = 'segmentation') -> Iterator[DatasetSample]:
    root = Path(root)
    wanted = set(drafters)
    for drafter_dir in sorted(root.glob('drafter_*')):
        drafter = drafter_from_path(drafter_dir.name)
        if drafter is None or drafter not in wanted or not drafter_dir.is_dir():
            continue
        annotation_files = sorted((drafter_dir / annotations_dir).glob('*.xml'))
        logger.info(f'iter_dataset:: drafter {drafter}: {len(annotation_files)} annotation files')
        for annotation_path in annotation_files:
            yield DatasetSample(
                drafter=drafter,
                annotation_path=annotation_path,
                image_path=_sibling(drafter_dir / images_dir, annotation_path.stem, IMAGE_SUFFIXES),
                segmap_path=_sibling(drafter_dir / segmaps_dir, annotation_path.stem, ('.png', '.PNG')),
            )
