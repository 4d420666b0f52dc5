"""Graph level comparison of a reconstructed circuit against its ground truth."""
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence

from graph_builder.models import CircuitGraph, Net, Node
from graph_builder.nets import derive_nets
from schematics.geometry import iou

DEFAULT_IOU_THRESHOLD = 0.5


@dataclass(frozen=True)
class GraphScore:
    node_precision: float
    node_recall: float
    edge_precision: float
    edge_recall: float
    net_delta: int

    def to_dict(self) -> dict:
        return asdict(self)


def node_label(node: Node) -> str:
    return node.cls or node.kind.value


def _ratio(hits: int, total: int) -> float:
    return 1.0 if total == 0 else hits / total


def match_nodes(pred: CircuitGraph, truth: CircuitGraph, iou_threshold: float = DEFAULT_IOU_THRESHOLD) -> Dict[int, int]:
    """Greedy one-to-one matching of same-label nodes, highest IoU first. Returns pred id -> truth id."""
    candidates = []
    for p in pred.nodes:
        for t in truth.nodes:
            if node_label(p) != node_label(t):
                continue
            overlap = iou(p.bbox, t.bbox)
            if overlap >= iou_threshold:
                candidates.append((-overlap, p.id, t.id))
    matching, used = {}, set()
    for _, p, t in sorted(candidates):
        if p in matching or t in used:
            continue
        matching[p] = t
        used.add(t)
    return matching


def _pair(a, b) -> tuple:
    return (a, b) if a <= b else (b, a)


def compare_graphs(pred: CircuitGraph, truth: CircuitGraph, iou_threshold: float = DEFAULT_IOU_THRESHOLD,
                   pred_nets: Optional[Sequence[Net]] = None, truth_nets: Optional[Sequence[Net]] = None) -> GraphScore:
    matching = match_nodes(pred, truth, iou_threshold)
    remaining = Counter(_pair(e.ends[0].node, e.ends[1].node) for e in truth.edges
                        if e.ends[0].node is not None and e.ends[1].node is not None)
    correct = 0
    for edge in sorted(pred.edges, key=lambda e: e.id):
        a, b = edge.ends[0].node, edge.ends[1].node
        if a not in matching or b not in matching:
            continue
        key = _pair(matching[a], matching[b])
        if remaining[key] > 0:
            remaining[key] -= 1
            correct += 1

    pred_nets = derive_nets(pred) if pred_nets is None else pred_nets
    truth_nets = derive_nets(truth) if truth_nets is None else truth_nets
    return GraphScore(node_precision=_ratio(len(matching), len(pred.nodes)),
                      node_recall=_ratio(len(matching), len(truth.nodes)),
                      edge_precision=_ratio(correct, len(pred.edges)),
                      edge_recall=_ratio(correct, len(truth.edges)),
                      net_delta=len(pred_nets) - len(truth_nets))
