import os

# Keep the process settings independent of the developer's shell
os.environ.setdefault('CIRCUITGRAPH_LOG_LEVEL', 'WARNING')
os.environ.setdefault('CIRCUITGRAPH_WORKERS', '1')

import numpy as np
import pytest

from schematics.library import load_library
from schematics.taxonomy import load_taxonomy
from tests.shared import circuits


@pytest.fixture(scope="session")
def taxonomy():
    """
    The bundled class taxonomy.
    """
    return load_taxonomy()


@pytest.fixture(scope="session")
def library(taxonomy):
    """
    The bundled symbol library, checked against the taxonomy.
    """
    return load_library(taxonomy=taxonomy)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=circuits.ALL_CIRCUITS, ids=lambda build: build.__name__.replace('_circuit', ''))
def circuit(request):
    """Every synthetic circuit in turn."""
    return request.param()


@pytest.fixture
def dataset_root(tmp_path):
    """
    A toy dataset: drafter 23 and 24 form the test split, drafter 1 must be skipped.
    """
    from annotations.bitmaps import encode_bitmap, encode_grayscale
    from annotations.voc import write_annotation

    layout = {23: [circuits.series_circuit()], 24: [circuits.parallel_circuit()], 1: [circuits.hop_circuit()]}
    for drafter, members in layout.items():
        base = tmp_path / f'drafter_{drafter}'
        for folder in ('annotations', 'images', 'segmentation'):
            (base / folder).mkdir(parents=True)
        for circuit in members:
            stem = f'C{drafter}_D1_P1'
            record = circuit.record().model_copy(update={'image_path': f'drafter_{drafter}/images/{stem}.png'})
            (base / 'annotations' / f'{stem}.xml').write_bytes(write_annotation(record))
            (base / 'images' / f'{stem}.png').write_bytes(encode_grayscale(circuit.gray()))
            (base / 'segmentation' / f'{stem}.png').write_bytes(encode_bitmap(circuit.bitmap()))
    return tmp_path
