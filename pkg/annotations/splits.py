from typing import FrozenSet

from pydantic import BaseModel, ConfigDict, model_validator

SPLIT_NAMES = ('train', 'validation', 'test', 'all')


class SplitSpec(BaseModel):
    """Drafter-disjoint dataset partition."""
    model_config = ConfigDict(frozen=True)

    train: FrozenSet[int]
    validation: FrozenSet[int]
    test: FrozenSet[int]

    @model_validator(mode='after')
    def _check_disjoint(self):
        pairs = (('train', 'validation'), ('train', 'test'), ('validation', 'test'))
        for a, b in pairs:
            shared = getattr(self, a) & getattr(self, b)
            if shared:
                raise ValueError(f'{a} and {b} share drafters {sorted(shared)}')
        return self

    def drafters(self, name: str) -> FrozenSet[int]:
        if name == 'all':
            return self.train | self.validation | self.test
        if name not in SPLIT_NAMES:
            raise ValueError(f'unknown split {name!r}, expected one of {", ".join(SPLIT_NAMES)}')
        return getattr(self, name)


def default_split() -> SplitSpec:
    return SplitSpec(train=frozenset(list(range(1, 21)) + [25]), validation=frozenset({21, 22}),
                     test=frozenset({23, 24}))
