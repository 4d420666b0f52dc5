from collections import Counter

import pytest
from rich.console import Console

from evaluator.graphs import compare_graphs, match_nodes, node_label
from evaluator.report import REPORT_SCHEMA, print_summary, report_errors
from schematics.geometry import iou
from tests.shared.graphs import graph_from_wires, symbol

pytestmark = pytest.mark.unit


@pytest.fixture
def truth():
    nodes = {0: symbol((0, 0, 40, 20)), 1: symbol((100, 0, 140, 20)), 2: symbol((100, 80, 140, 100))}
    return graph_from_wires(nodes, [(0, 1, [(40, 10), (100, 10)]), (1, 2, [(120, 20), (120, 80)]),
                                    (0, 2, [(20, 20), (20, 90), (100, 90)])])


def _shifted(box):
    return tuple(v + 1 for v in box)


def exhaustive_score(pred, truth, iou_threshold=0.5):
    """Best node matching by exhaustive search, edges counted through it as a multiset intersection."""
    allowed = {p.id: [t.id for t in truth.nodes if node_label(p) == node_label(t) and iou(p.bbox, t.bbox) >= iou_threshold]
               for p in pred.nodes}
    truth_edges = Counter(tuple(sorted((e.ends[0].node, e.ends[1].node))) for e in truth.edges)
    pred_ids = sorted(allowed)
    best = (0, 0)

    def search(index, matching):
        nonlocal best
        if index == len(pred_ids):
            mapped = Counter(tuple(sorted((matching[e.ends[0].node], matching[e.ends[1].node]))) for e in pred.edges
                             if e.ends[0].node in matching and e.ends[1].node in matching)
            best = max(best, (len(matching), sum((mapped & truth_edges).values())))
            return
        p = pred_ids[index]
        search(index + 1, matching)
        for t in allowed[p]:
            if t not in matching.values():
                search(index + 1, {**matching, p: t})

    search(0, {})
    return best


def random_graph(rng, cells, shifts, first_id=0, classes=('resistor', 'diode')):
    """Nodes sit in disjoint 100 px cells, moved right by `shifts`; wires join random node pairs."""
    nodes = {}
    for offset, (cell, shift) in enumerate(zip(cells, shifts)):
        x, y = 100 * int(cell % 4) + int(shift), 100 * int(cell // 4)
        nodes[first_id + offset] = symbol((x, y, x + 40, y + 20), cls=classes[int(rng.integers(len(classes)))])
    ids = sorted(nodes)
    wires = []
    for _ in range(int(rng.integers(0, 2 * len(ids))) if len(ids) > 1 else 0):
        a, b = (int(v) for v in rng.choice(ids, size=2, replace=False))
        (ax, ay), (bx, by) = nodes[a][1][:2], nodes[b][1][:2]
        wires.append((a, b, [(ax + 20, ay + 10), (bx + 20, by + 10)]))
    return graph_from_wires(nodes, wires)


class TestCompareGraphs:
    """Node matching by label and overlap, edge matching through the node matching."""

    def test_identical(self, truth):
        score = compare_graphs(truth, truth)
        assert (score.node_precision, score.node_recall, score.edge_precision, score.edge_recall) == (1, 1, 1, 1)
        assert score.net_delta == 0

    def test_missing_edge_and_spurious_node(self, truth):
        nodes = {10: symbol(_shifted((0, 0, 40, 20))), 11: symbol(_shifted((100, 0, 140, 20))),
                 12: symbol(_shifted((100, 80, 140, 100))), 13: symbol((200, 200, 240, 220), cls='diode')}
        pred = graph_from_wires(nodes, [(10, 11, [(41, 11), (101, 11)]), (11, 12, [(121, 21), (121, 81)])])

        assert match_nodes(pred, truth) == {10: 0, 11: 1, 12: 2}
        score = compare_graphs(pred, truth)

        assert score.node_precision == pytest.approx(0.75)
        assert score.node_recall == 1.0
        assert score.edge_precision == 1.0
        assert score.edge_recall == pytest.approx(2 / 3)
        assert score.net_delta == -1

    def test_labels_must_agree(self, truth):
        nodes = {0: symbol((0, 0, 40, 20), cls='capacitor.unpolarized'), 1: symbol((100, 0, 140, 20))}
        pred = graph_from_wires(nodes, [(0, 1, [(40, 10), (100, 10)])])

        assert match_nodes(pred, truth) == {1: 1}
        assert compare_graphs(pred, truth).edge_precision == 0.0

    def test_empty_graphs_score_one(self):
        empty = graph_from_wires({}, [])
        score = compare_graphs(empty, empty)
        assert score.to_dict() == {'node_precision': 1.0, 'node_recall': 1.0, 'edge_precision': 1.0,
                                   'edge_recall': 1.0, 'net_delta': 0}

    def test_agrees_with_exhaustive_matching(self, rng):
        for _ in range(60):
            truth = random_graph(rng, rng.permutation(12)[:rng.integers(0, 9)], shifts=[0] * 8)
            cells = rng.permutation(12)[:rng.integers(0, 9)]
            pred = random_graph(rng, cells, shifts=rng.choice([0, 5, 25], size=len(cells)), first_id=100)

            matched, correct = exhaustive_score(pred, truth)
            score = compare_graphs(pred, truth)

            assert len(match_nodes(pred, truth)) == matched
            assert score.node_precision == (matched / len(pred.nodes) if pred.nodes else 1.0)
            assert score.node_recall == (matched / len(truth.nodes) if truth.nodes else 1.0)
            assert score.edge_precision == (correct / len(pred.edges) if pred.edges else 1.0)
            assert score.edge_recall == (correct / len(truth.edges) if truth.edges else 1.0)


@pytest.fixture
def report():
    return {
        'split': 'test', 'images': 2,
        'detection': {'map': 0.9, 'classes': {'resistor': 0.9}, 'iou_threshold': 0.5, 'ap_mode': 'all-points'},
        'orientation': {'accuracy': 0.8, 'pairs': 10, 'threshold': 5.0},
        'text': {'character_error_rate': 0.25, 'samples': 4, 'max_length': 6, 'unknown_characters': []},
        'segmentation': {'pixel_accuracy': None, 'images': 0},
        'graph': {'node_precision': 1.0, 'node_recall': 0.5, 'edge_precision': 1.0, 'edge_recall': 0.5,
                  'net_delta': -2, 'images': 2},
        'failures': [],
    }


class TestReport:
    """Schema checks and the console table."""

    def test_valid(self, report):
        assert report_errors(report) == []

    def test_missing_section(self, report):
        del report['graph']
        assert report_errors(report) == ["'graph' is a required property"]

    def test_wrong_type(self, report):
        report['images'] = 'two'
        assert len(report_errors(report)) == 1

    def test_schema_lists_every_section(self):
        assert set(REPORT_SCHEMA['required']) == set(REPORT_SCHEMA['properties'])

    def test_summary(self, report):
        console = Console(record=True, width=120)
        print_summary(report, console)
        text = console.export_text()

        assert 'Detection mAP' in text
        assert '90.00%' in text
        assert 'n/a' in text
        assert '-2' in text
