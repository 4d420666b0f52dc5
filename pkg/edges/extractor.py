import logging
from typing import List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from edges.components import DEFAULT_MARGIN, DEFAULT_MIN_BLOB_SIZE, Blob, label_components, mask_objects
from edges.contacts import Contact, find_contacts
from edges.tracing import TraceError, decompose, trace_polyline
from schematics.diagnostics import Diagnostic, DiagnosticKind, report
from schematics.models import AnnotatedObject, BitMap, Category, Polyline
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)


class SegmentEnd(BaseModel):
    """Wire end. Implicit ends stand for a branch point, their negative `object_id` is only
    unique within one extraction."""
    model_config = ConfigDict(frozen=True)

    object_id: int
    point: Tuple[float, float]
    implicit: bool = False


class WireSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    blob_id: int
    polyline: Polyline
    endpoints: Tuple[SegmentEnd, SegmentEnd]


def _straight(blob: Blob, first: Contact, second: Contact) -> Tuple[Optional[Polyline], List[Diagnostic]]:
    objects = [first.object_id, second.object_id]
    if first.point == second.point:
        return None, [report(DiagnosticKind.TRACE_FALLBACK, f'blob {blob.id}: contacts coincide at {first.point}',
                             blob=blob.id, objects=objects, source=logger)]
    diagnostic = report(DiagnosticKind.TRACE_FALLBACK, f'blob {blob.id}: skeleton trace failed, using a straight segment',
                        blob=blob.id, objects=objects, source=logger)
    return Polyline(points=(first.point, second.point)), [diagnostic]


def _extract_blob(blob: Blob, contacts: List[Contact]):
    """Returns (segments, diagnostics, branch count) for one blob; branch ends use local ids -1, -2, ..."""
    if len(contacts) < 2:
        message = f'blob {blob.id} touches {len(contacts)} object(s), no edge created'
        return [], [report(DiagnosticKind.DANGLING_BLOB, message, blob=blob.id,
                           objects=[c.object_id for c in contacts], source=logger)], 0

    if len(contacts) == 2:
        first, second = contacts
        diagnostics = []
        try:
            polyline = trace_polyline(blob, (first.point, second.point))
        except TraceError as e:
            logger.debug(f'_extract_blob:: {e}')
            polyline, diagnostics = _straight(blob, first, second)
        if polyline is None:
            return [], diagnostics, 0
        ends = (SegmentEnd(object_id=first.object_id, point=first.point),
                SegmentEnd(object_id=second.object_id, point=second.point))
        return [WireSegment(blob_id=blob.id, polyline=polyline, endpoints=ends)], diagnostics, 0

    decomposition = decompose(blob, contacts)
    local_ids = {key: -(i + 1) for i, key in enumerate(sorted(decomposition.branch_points))}
    by_object = {('contact', c.object_id): c for c in contacts}

    def end_of(key):
        if key in local_ids:
            return SegmentEnd(object_id=local_ids[key], point=decomposition.branch_points[key].point, implicit=True)
        return SegmentEnd(object_id=key[1], point=by_object[key].point)

    segments = [WireSegment(blob_id=blob.id, polyline=Polyline(points=arc.points), endpoints=(end_of(arc.start), end_of(arc.end)))
                for arc in decomposition.arcs]
    diagnostics = []
    reached = {key for arc in decomposition.arcs for key in (arc.start, arc.end)}
    for key in sorted(local_ids):
        neighbours = sorted({end_of(k).object_id for arc in decomposition.arcs if arc.touches(key)
                             for k in (arc.start, arc.end) if k in by_object})
        diagnostics.append(report(DiagnosticKind.IMPLICIT_JUNCTION,
                                  f'blob {blob.id}: branch point at {decomposition.branch_points[key].point} '
                                  f'joins {len([a for a in decomposition.arcs if a.touches(key)])} arcs',
                                  blob=blob.id, objects=neighbours, source=logger))
    unreached = [c.object_id for c in contacts if ('contact', c.object_id) not in reached]
    if unreached:
        diagnostics.append(report(DiagnosticKind.DANGLING_BLOB,
                                  f'blob {blob.id}: objects {unreached} touch only a pruned spur',
                                  blob=blob.id, objects=unreached, source=logger))
    return segments, diagnostics, len(local_ids)


def _renumber(segment: WireSegment, offset: int) -> WireSegment:
    ends = tuple(end.model_copy(update={'object_id': end.object_id - offset}) if end.implicit else end
                 for end in segment.endpoints)
    return segment.model_copy(update={'endpoints': ends})


@log_stage
def extract_edges(bitmap: BitMap, objects: Sequence[AnnotatedObject], margin: int = DEFAULT_MARGIN,
                  min_blob_size: int = DEFAULT_MIN_BLOB_SIZE,
                  n_jobs: Optional[int] = None) -> Tuple[List[WireSegment], List[Diagnostic]]:
    """Masks every object, labels what is left and turns blobs touching objects into wire segments.

    Texts are masked but never count as contacts. Implicit branch ends are numbered -1, -2, ...
    across the whole image in blob order.

    A blob branching into three or more contacts, such as a T-shaped stroke, is split into one
    segment per arc meeting at an implicit junction rather than into one segment per contact pair.
    """
    masked = mask_objects(bitmap, objects, margin)
    blobs = label_components(masked, min_blob_size)
    wiring = [obj for obj in objects if obj.category != Category.TEXT]
    contacts = [find_contacts(blob, wiring, margin) for blob in blobs]
    logger.debug(f'extract_edges:: {len(blobs)} blob(s) after masking {len(objects)} object(s)')

    if n_jobs and n_jobs != 1 and len(blobs) > 1:
        results = Parallel(n_jobs=n_jobs, prefer='threads')(
            delayed(_extract_blob)(blob, found) for blob, found in zip(blobs, contacts))
    else:
        results = [_extract_blob(blob, found) for blob, found in zip(blobs, contacts)]

    segments, diagnostics, offset = [], [], 0
    for blob_segments, blob_diagnostics, branches in results:
        segments.extend(_renumber(s, offset) for s in blob_segments)
        diagnostics.extend(blob_diagnostics)
        offset += branches
    return segments, diagnostics
