import logging
from typing import Optional, Sequence

from graph_builder.models import CircuitGraph, NodeKind, TextLabel
from schematics.geometry import distance
from schematics.models import AnnotatedObject, Category
from utils.logging_utils import log_stage

logger = logging.getLogger(__name__)

DIAGONAL_FACTOR = 1.5


@log_stage
def associate_texts(graph: CircuitGraph, texts: Sequence[AnnotatedObject], max_dist: Optional[float] = None) -> CircuitGraph:
    """Attaches each text to the closest symbol; texts out of reach become free annotations."""
    graph = graph.model_copy(deep=True)
    symbols = sorted((n for n in graph.nodes if n.kind == NodeKind.SYMBOL), key=lambda n: n.id)
    for text in sorted(texts, key=lambda t: t.id):
        if text.category != Category.TEXT:
            logger.warning(f'associate_texts:: object {text.id} is {text.category.value}, not Text; skipped')
            continue
        label = TextLabel(id=text.id, text=text.text, bbox=text.bbox)
        reachable = []
        for node in symbols:
            gap = distance(text.bbox.center, node.bbox.center)
            limit = max_dist if max_dist is not None else DIAGONAL_FACTOR * node.bbox.diagonal
            if gap <= limit:
                reachable.append((gap, node.id, node))
        if reachable:
            min(reachable, key=lambda r: (r[0], r[1]))[2].labels.append(label)
        else:
            graph.annotations.append(label)
    return graph
