import logging
import sys
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from annotations.bitmaps import (BitmapDecodeError, Polarity, decode_grayscale, encode_bitmap, encode_grayscale,
                                 load_bitmap)
from annotations.interchange import InterchangeSchemaError, write_perception
from annotations.records import AnnotationValidationError
from annotations.voc import AnnotationParseError, parse_annotation
from binarizer.tiling import ClassifierContractError, TilingError
from circuitgraph import settings
from circuitgraph.config import ConfigError, PipelineConfig, build_config
from circuitgraph.evaluation import EvaluationError, evaluate_dataset
from circuitgraph.pipeline import PerceptionError, binarize_image, load_record, run_extraction
from evaluator.detection import APMode
from evaluator.report import print_summary, report_errors
from evaluator.semantic import synthesize_semantic_map
from exporter.graph_json import read_graph_json
from exporter.graphml import to_graphml
from exporter.netlist import to_netlist
from graph_builder.models import AssemblyError
from schematics.diagnostics import to_json_lines
from schematics.library import LibraryEntryError, load_library
from schematics.taxonomy import load_taxonomy
from utils.json_utils import SerializationError, to_pretty_json

logger = logging.getLogger(__name__)

USAGE_EXIT = 2
WARNINGS_EXIT = 1

CONTRACT_ERRORS = (AnnotationParseError, AnnotationValidationError, InterchangeSchemaError, BitmapDecodeError,
                   TilingError, ClassifierContractError, LibraryEntryError, AssemblyError, SerializationError,
                   PerceptionError, ConfigError, EvaluationError, FileNotFoundError, IsADirectoryError)

CONVERSIONS = {
    ('xml', 'interchange'): 'annotation XML -> perception interchange JSON',
    ('xml', 'semantic-png'): 'annotation XML (+ --map) -> semantic label PNG',
    ('graph-json', 'graphml'): 'graph JSON -> GraphML',
    ('graph-json', 'netlist'): 'graph JSON -> netlist',
}

app = typer.Typer(help='Extract circuit graphs from handwritten schematics.', no_args_is_help=True,
                  pretty_exceptions_enable=False)
err_console = Console(stderr=True)


@app.callback()
def main(verbose: bool = typer.Option(False, '--verbose', '-v', help='Log at DEBUG level.')):
    settings.configure_logging(verbose)


def _fail(message: str) -> typer.Exit:
    err_console.print(f'[red]error:[/red] {message}', highlight=False)
    return typer.Exit(code=USAGE_EXIT)


def _config(config_path: Optional[Path], **overrides) -> PipelineConfig:
    try:
        return build_config(config_path, **overrides)
    except (ConfigError, OSError) as e:
        raise _fail(str(e))


def _resources(config: PipelineConfig):
    taxonomy = load_taxonomy(config.taxonomy or settings.TAXONOMY_PATH)
    return taxonomy, load_library(config.library or settings.SYMBOL_LIBRARY_PATH, taxonomy)


def _write(path: Optional[Path], data: bytes):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    logger.info(f'wrote {path} ({len(data)} bytes)')


@app.command('extract')
def cmd_extract(
        image: Path = typer.Argument(..., help='Schematic image (used for binarization and overlay backgrounds).'),
        annotation: Optional[Path] = typer.Option(None, '--annotation', '-a',
                                                  help='Perception input: VOC annotation (.xml) or interchange (.json).'),
        segmap: Optional[Path] = typer.Option(None, '--map', help='Binary stroke map PNG; binarizes IMAGE when absent.'),
        graph_json: Optional[Path] = typer.Option(None, '--graph-json', help='Write graph JSON here.'),
        netlist: Optional[Path] = typer.Option(None, '--netlist', help='Write the netlist here.'),
        graphml: Optional[Path] = typer.Option(None, '--graphml', help='Write GraphML here.'),
        overlay: Optional[Path] = typer.Option(None, '--overlay', help='Write the final SVG overlay here.'),
        diagnostics: Optional[Path] = typer.Option(None, '--diagnostics', help='Write diagnostics as JSON lines here.'),
        debug_stages: Optional[Path] = typer.Option(None, '--debug-stages',
                                                    help='Directory receiving one SVG per pipeline stage.'),
        config_path: Optional[Path] = typer.Option(None, '--config', help='YAML file keyed by flag names.'),
        library: Optional[Path] = typer.Option(None, '--library', help='Symbol library JSON.'),
        taxonomy: Optional[Path] = typer.Option(None, '--taxonomy', help='Class taxonomy JSON.'),
        margin: Optional[int] = typer.Option(None, '--margin', help='Object mask margin in px [default: 4].'),
        epsilon: Optional[float] = typer.Option(None, '--epsilon', help='Simplification tolerance in px [default: 3].'),
        snap: Optional[float] = typer.Option(None, '--snap', help='Axis snapping threshold in degrees [default: 10].'),
        polarity: Optional[Polarity] = typer.Option(None, '--polarity', help='Stroke polarity of --map [default: light].'),
        include_open_nets: Optional[bool] = typer.Option(None, '--include-open-nets/--omit-open-nets',
                                                         help='List unconnected ports as single-member nets.'),
        max_warnings: Optional[int] = typer.Option(None, '--max-warnings',
                                                   help='Exit with 1 when more diagnostics are produced.'),
        seed: Optional[int] = typer.Option(None, '--seed', help='Reserved; nothing is stochastic.'),
):
    """Run the whole pipeline on one image."""
    config = _config(config_path, library=library, taxonomy=taxonomy, margin=margin, epsilon=epsilon, snap=snap,
                     polarity=polarity, include_open_nets=include_open_nets, max_warnings=max_warnings, seed=seed)
    try:
        taxonomy_, lib = _resources(config)
        record = load_record(annotation, taxonomy_, image_path=str(image))
        image_bytes = image.read_bytes() if image.exists() else None
        gray = decode_grayscale(image_bytes) if image_bytes is not None else None
        if segmap is not None:
            bitmap = load_bitmap(segmap.read_bytes(), config.threshold, config.polarity)
        elif gray is not None:
            bitmap = binarize_image(gray, config)
        else:
            raise PerceptionError(f'{image} does not exist and no --map was given')
        result = run_extraction(record, bitmap, config, lib, image_name=image.name, gray=gray,
                                debug_stages=debug_stages is not None)
    except CONTRACT_ERRORS as e:
        raise _fail(str(e))

    outputs = [(graph_json, result.bundle.graph_json), (netlist, result.bundle.netlist), (graphml, result.bundle.graphml),
               (overlay, result.bundle.overlay_svg), (diagnostics, to_json_lines(result.diagnostics))]
    written = False
    for path, data in outputs:
        if path is not None:
            _write(path, data)
            written = True
    if not written:
        _write(None, result.bundle.netlist)
    if debug_stages is not None:
        for index, (stage, svg) in enumerate(result.stages.items(), start=1):
            _write(debug_stages / f'{index:02d}-{stage.value}.svg', svg)

    if config.max_warnings is not None and len(result.diagnostics) > config.max_warnings:
        err_console.print(f'{len(result.diagnostics)} diagnostic(s) exceed --max-warnings {config.max_warnings}')
        raise typer.Exit(code=WARNINGS_EXIT)


@app.command('binarize')
def cmd_binarize(
        image: Path = typer.Argument(..., help='Grayscale or color schematic image.'),
        output: Path = typer.Option(..., '--output', '-o', help='Stroke map PNG (strokes 255).'),
        config_path: Optional[Path] = typer.Option(None, '--config', help='YAML file keyed by flag names.'),
        window: Optional[int] = typer.Option(None, '--window', help='Sauvola window, odd [default: 31].'),
        k: Optional[float] = typer.Option(None, '--k', help='Sauvola k [default: 0.2].'),
        patch: Optional[int] = typer.Option(None, '--patch', help='Tile size in px [default: 256].'),
        cutoff: Optional[float] = typer.Option(None, '--cutoff', help='Probability cutoff [default: 0.5].'),
        workers: Optional[int] = typer.Option(None, '--workers', help='Parallel tiles [default: 1].'),
):
    """Binarize an image patchwise with the classical Sauvola classifier."""
    config = _config(config_path, window=window, k=k, patch=patch, cutoff=cutoff, workers=workers)
    try:
        bitmap = binarize_image(decode_grayscale(image.read_bytes()), config)
    except CONTRACT_ERRORS as e:
        raise _fail(str(e))
    _write(output, encode_bitmap(bitmap))


@app.command('evaluate')
def cmd_evaluate(
        root: Optional[Path] = typer.Argument(None, help='Dataset root with drafter_<n> directories '
                                                         '[default: $CIRCUITGRAPH_DATASET_ROOT].'),
        split: Optional[str] = typer.Option(None, '--split', help='train, validation, test or all [default: test].'),
        predictions: Optional[Path] = typer.Option(None, '--predictions',
                                                   help='Directory of <stem>.json/.xml/.png predictions; '
                                                        'ground truth is scored against itself when absent.'),
        report: Optional[Path] = typer.Option(None, '--report', help='Write the JSON report here.'),
        config_path: Optional[Path] = typer.Option(None, '--config', help='YAML file keyed by flag names.'),
        library: Optional[Path] = typer.Option(None, '--library', help='Symbol library JSON.'),
        taxonomy: Optional[Path] = typer.Option(None, '--taxonomy', help='Class taxonomy JSON.'),
        ap_mode: Optional[APMode] = typer.Option(None, '--ap-mode', help='AP interpolation [default: all-points].'),
        iou_threshold: Optional[float] = typer.Option(None, '--iou-threshold', help='Match threshold [default: 0.5].'),
        workers: Optional[int] = typer.Option(None, '--workers', help='Worker pool size [default: CPU count].'),
        seed: Optional[int] = typer.Option(None, '--seed', help='Reserved; nothing is stochastic.'),
):
    """Score perception and graph extraction over a dataset split."""
    config = _config(config_path, split=split, library=library, taxonomy=taxonomy, ap_mode=ap_mode,
                     iou_threshold=iou_threshold, workers=workers or settings.WORKERS, seed=seed)
    root = root or settings.DATASET_ROOT
    if root is None:
        raise _fail('no dataset root given and CIRCUITGRAPH_DATASET_ROOT is unset')
    try:
        taxonomy_, lib = _resources(config)
        result = evaluate_dataset(Path(root), config, taxonomy_, lib, predictions=predictions,
                                  progress=sys.stderr.isatty())
    except CONTRACT_ERRORS as e:
        raise _fail(str(e))
    problems = report_errors(result)
    if problems:
        logger.error(f'cmd_evaluate:: report does not match its schema: {problems}')
    if report is not None:
        _write(report, to_pretty_json(result))
    print_summary(result, Console(stderr=report is None))
    if report is None:
        _write(None, to_pretty_json(result))


def _kind(path: Path) -> str:
    return 'xml' if path.suffix.lower() == '.xml' else 'graph-json' if path.suffix.lower() == '.json' else path.suffix


@app.command('convert')
def cmd_convert(
        source: Path = typer.Argument(..., help='Annotation XML or graph JSON.'),
        to: str = typer.Option(..., '--to', help='interchange, semantic-png, graphml or netlist.'),
        output: Optional[Path] = typer.Option(None, '--output', '-o', help='Destination [default: stdout].'),
        segmap: Optional[Path] = typer.Option(None, '--map', help='Stroke map for semantic-png.'),
        image: Optional[str] = typer.Option(None, '--image', help='Image name for the netlist header.'),
        library: Optional[Path] = typer.Option(None, '--library', help='Symbol library JSON.'),
        taxonomy: Optional[Path] = typer.Option(None, '--taxonomy', help='Class taxonomy JSON.'),
        config_path: Optional[Path] = typer.Option(None, '--config', help='YAML file keyed by flag names.'),
):
    """Convert between annotation, interchange and graph formats."""
    pair = (_kind(source), to)
    if pair not in CONVERSIONS:
        supported = '; '.join(f'{a} --to {b} ({text})' for (a, b), text in CONVERSIONS.items())
        raise _fail(f'unsupported conversion {pair[0]} -> {to}. Supported: {supported}')
    config = _config(config_path, library=library, taxonomy=taxonomy)
    try:
        taxonomy_, lib = _resources(config)
        data = source.read_bytes()
        if pair == ('xml', 'interchange'):
            result = write_perception(parse_annotation(data, taxonomy_))
        elif pair == ('xml', 'semantic-png'):
            if segmap is None:
                raise PerceptionError('semantic-png needs the stroke map given with --map')
            record = parse_annotation(data, taxonomy_)
            bitmap = load_bitmap(segmap.read_bytes(), config.threshold, config.polarity)
            result = encode_grayscale(synthesize_semantic_map(record.model_copy(update={'segmap': bitmap}), taxonomy_))
        else:
            graph, nets = read_graph_json(data)
            result = to_graphml(graph, nets) if to == 'graphml' else to_netlist(graph, nets, lib, image=image or '')
    except CONTRACT_ERRORS as e:
        raise _fail(str(e))
    _write(output, result)


def run():
    app()


if __name__ == '__main__':
    run()
