import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional

from schematics.models import Category, ObjectClass

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent / 'data'
DEFAULT_TAXONOMY_PATH = DATA_DIR / 'taxonomy.json'


class Taxonomy:
    """Maps dataset class names onto structural categories."""

    def __init__(self, categories: Dict[str, Category]):
        self.categories = dict(categories)

    def __contains__(self, name: str) -> bool:
        return name in self.categories

    def __len__(self):
        return len(self.categories)

    def names(self, category: Optional[Category] = None) -> Iterable[str]:
        return sorted(n for n, c in self.categories.items() if category is None or c == category)

    def object_class(self, name: str) -> ObjectClass:
        return ObjectClass(name=name, category=category_of(name, self))


def category_of(name: str, taxonomy: Taxonomy) -> Category:
    category = taxonomy.categories.get(name)
    if category is None:
        logger.warning(f'category_of:: unknown class name {name!r}, treating it as a Symbol')
        return Category.SYMBOL
    return category


def load_taxonomy(path: Optional[Path] = None) -> Taxonomy:
    path = Path(path or DEFAULT_TAXONOMY_PATH)
    with open(path, 'r', encoding='utf-8') as file:
        raw = json.load(file)
    try:
        categories = {name: Category(value) for name, value in raw.items()}
    except ValueError as e:
        raise ValueError(f'load_taxonomy:: invalid category in {path}: {e}')
    logger.debug(f'load_taxonomy:: loaded {len(categories)} classes from {path}')
    return Taxonomy(categories)
