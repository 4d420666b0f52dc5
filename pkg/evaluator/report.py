"""Evaluation report: JSON document plus a console summary table."""
from typing import Optional

from jsonschema import Draft202012Validator
from rich.console import Console
from rich.table import Table

_METRIC = {'type': ['number', 'null']}

REPORT_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'required': ['split', 'images', 'detection', 'orientation', 'text', 'segmentation', 'graph', 'failures'],
    'properties': {
        'split': {'type': 'string'},
        'images': {'type': 'integer', 'minimum': 0},
        'detection': {
            'type': ['object', 'null'],
            'required': ['map', 'classes', 'iou_threshold', 'ap_mode'],
            'properties': {'map': _METRIC, 'classes': {'type': 'object'}, 'iou_threshold': {'type': 'number'},
                           'ap_mode': {'type': 'string'}},
        },
        'orientation': {
            'type': 'object',
            'required': ['accuracy', 'pairs', 'threshold'],
            'properties': {'accuracy': _METRIC, 'pairs': {'type': 'integer'}, 'threshold': {'type': 'number'}},
        },
        'text': {
            'type': 'object',
            'required': ['character_error_rate', 'samples', 'max_length', 'unknown_characters'],
            'properties': {'character_error_rate': _METRIC, 'samples': {'type': 'integer'},
                           'max_length': {'type': 'integer'},
                           'unknown_characters': {'type': 'array', 'items': {'type': 'string'}}},
        },
        'segmentation': {
            'type': 'object',
            'required': ['pixel_accuracy', 'images'],
            'properties': {'pixel_accuracy': _METRIC, 'images': {'type': 'integer'}},
        },
        'graph': {
            'type': 'object',
            'required': ['node_precision', 'node_recall', 'edge_precision', 'edge_recall', 'net_delta', 'images'],
            'properties': {'node_precision': _METRIC, 'node_recall': _METRIC, 'edge_precision': _METRIC,
                           'edge_recall': _METRIC, 'net_delta': {'type': ['integer', 'null']},
                           'images': {'type': 'integer'}},
        },
        'failures': {'type': 'array', 'items': {'type': 'object'}},
    },
}

_validator = Draft202012Validator(REPORT_SCHEMA)


def report_errors(report: dict) -> list:
    return sorted(e.message for e in _validator.iter_errors(report))


def _fmt(value: Optional[float], percent: bool = True) -> str:
    if value is None:
        return 'n/a'
    return f'{value * 100:.2f}%' if percent else str(value)


def summary_table(report: dict) -> Table:
    table = Table(title=f"Evaluation of split '{report['split']}' ({report['images']} image(s))", show_header=True,
                  header_style='bold')
    table.add_column('Metric')
    table.add_column('Value', justify='right')
    detection = report['detection']
    table.add_row('Detection mAP', _fmt(detection['map']) if detection else 'n/a')
    table.add_row(f"Orientation accuracy (<= {report['orientation']['threshold']:g} deg)",
                  _fmt(report['orientation']['accuracy']))
    table.add_row('Character error rate', _fmt(report['text']['character_error_rate']))
    table.add_row('Segmentation pixel accuracy', _fmt(report['segmentation']['pixel_accuracy']))
    graph = report['graph']
    for key in ('node_precision', 'node_recall', 'edge_precision', 'edge_recall'):
        table.add_row(f"Graph {key.replace('_', ' ')}", _fmt(graph[key]))
    table.add_row('Graph net count delta', _fmt(graph['net_delta'], percent=False))
    if report['failures']:
        table.add_row('Failed images', str(len(report['failures'])))
    return table


def print_summary(report: dict, console: Optional[Console] = None):
    (console or Console()).print(summary_table(report))
