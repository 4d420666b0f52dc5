import logging
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from utils.json_utils import to_canonical_json

logger = logging.getLogger(__name__)


class DiagnosticKind(str, Enum):
    DANGLING_BLOB = 'dangling-blob'
    IMPLICIT_JUNCTION = 'implicit-junction'
    TRACE_FALLBACK = 'trace-fallback'
    HOP_UNRESOLVED = 'hop-unresolved'
    HOP_AMBIGUOUS = 'hop-ambiguous'
    CORNER_JUNCTION = 'corner-junction'
    CORNER_DANGLING = 'corner-dangling'
    JUNCTION_DEGREE = 'junction-degree'
    MISSING_ROTATION = 'missing-rotation'
    MISSING_LIBRARY_ENTRY = 'missing-library-entry'
    UNMATCHED_PORT = 'unmatched-port'


class Diagnostic(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: DiagnosticKind
    blob: Optional[int] = None
    objects: List[int] = []
    node: Optional[int] = None
    message: str = ''

    def to_record(self) -> dict:
        return {
            'kind': self.kind.value,
            'blob': self.blob,
            'objects': list(self.objects),
            'node': self.node,
            'message': self.message,
        }


def report(kind: DiagnosticKind, message: str, *, blob: Optional[int] = None, objects=(), node: Optional[int] = None,
           source: Optional[logging.Logger] = None) -> Diagnostic:
    """Builds a diagnostic and logs it as a warning on the caller's logger."""
    (source or logger).warning(f'{kind.value}: {message}')
    return Diagnostic(kind=kind, blob=blob, objects=list(objects), node=node, message=message)


def to_json_lines(diagnostics: List[Diagnostic]) -> bytes:
    return b''.join(to_canonical_json(d.to_record()) + b'\n' for d in diagnostics)
