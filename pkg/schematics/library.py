import json
import logging
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from schematics.models import Category, ObjectClass
from schematics.taxonomy import DATA_DIR, Taxonomy

logger = logging.getLogger(__name__)

DEFAULT_LIBRARY_PATH = DATA_DIR / 'symbol_library.json'


class LibraryEntryError(LookupError):
    pass


class Symmetry(str, Enum):
    NONE = 'none'
    MIRROR180 = 'mirror180'

    @property
    def period(self) -> float:
        return 180.0 if self == Symmetry.MIRROR180 else 360.0


class PortTemplate(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    x: float = Field(ge=0.0, le=1.0)
    y: float = Field(ge=0.0, le=1.0)


class SymbolTemplate(BaseModel):
    model_config = ConfigDict(frozen=True)

    symmetry: Symmetry = Symmetry.NONE
    ports: List[PortTemplate] = []

    @field_validator('ports')
    @classmethod
    def _unique_names(cls, ports):
        names = [p.name for p in ports]
        if len(names) != len(set(names)):
            raise ValueError(f'duplicate port names {names}')
        return ports


class SymbolLibrary(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Dict[str, SymbolTemplate]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def get(self, cls: ObjectClass | str) -> SymbolTemplate:
        name = cls.name if isinstance(cls, ObjectClass) else cls
        try:
            return self.entries[name]
        except KeyError:
            raise LibraryEntryError(f'no symbol library entry for class {name!r}')

    def missing_symbols(self, taxonomy: Taxonomy) -> List[str]:
        wanted = list(taxonomy.names(Category.SYMBOL)) + list(taxonomy.names(Category.TERMINAL))
        return sorted(name for name in wanted if name not in self.entries)


def library_from_dict(raw: dict) -> SymbolLibrary:
    return SymbolLibrary(entries={name: SymbolTemplate.model_validate(entry) for name, entry in raw.items()})


def load_library(path: Optional[Path] = None, taxonomy: Optional[Taxonomy] = None) -> SymbolLibrary:
    path = Path(path or DEFAULT_LIBRARY_PATH)
    with open(path, 'r', encoding='utf-8') as file:
        raw = json.load(file)
    try:
        library = library_from_dict(raw)
    except ValidationError as e:
        raise ValueError(f'load_library:: invalid symbol library {path}: {e}')
    if taxonomy is not None:
        missing = library.missing_symbols(taxonomy)
        if missing:
            raise LibraryEntryError(f'symbol library {path} lacks entries for {", ".join(missing)}')
    logger.debug(f'load_library:: loaded {len(library.entries)} templates from {path}')
    return library
