import string
from dataclasses import dataclass
from typing import List, Sequence

import Levenshtein

from schematics.models import AnnotatedObject, Category

DEFAULT_MAX_LENGTH = 6
SPECIAL_CHARACTERS = ' µΩ'


@dataclass(frozen=True)
class Vocabulary:
    characters: str

    def __post_init__(self):
        if len(set(self.characters)) != len(self.characters):
            raise ValueError('vocabulary characters must be unique')

    def __len__(self):
        return len(self.characters)

    def covers(self, text: str) -> bool:
        return not self.unknown(text)

    def unknown(self, text: str) -> set:
        return set(text) - set(self.characters)


def default_vocabulary() -> Vocabulary:
    printable = ''.join(c for c in string.printable if not c.isspace())
    return Vocabulary(printable + SPECIAL_CHARACTERS)


def cer(pred: str, truth: str) -> float:
    """Edit distance over code points, divided by the truth length (at least 1)."""
    return Levenshtein.distance(pred, truth) / max(1, len(truth))


def filter_texts(objects: Sequence[AnnotatedObject], max_len: int = DEFAULT_MAX_LENGTH) -> List[AnnotatedObject]:
    """Drops Text objects longer than `max_len`; other categories pass through."""
    if max_len < 1:
        raise ValueError(f'filter_texts:: max_len must be >= 1, got {max_len}')
    return [o for o in objects if o.category != Category.TEXT or len(o.text or '') <= max_len]
