"""
Process-level settings for circuitgraph.

Values come from the environment (or a `.env` file next to the working directory); run-level
tunables live in `circuitgraph.config.PipelineConfig`.
"""
import logging.config
import os
from pathlib import Path

from environs import Env

from schematics.library import DEFAULT_LIBRARY_PATH
from schematics.taxonomy import DEFAULT_TAXONOMY_PATH

env = Env()
env.read_env()

BASE_DIR = Path(__file__).resolve().parent.parent

SYMBOL_LIBRARY_PATH = env.path('CIRCUITGRAPH_LIBRARY', default=str(DEFAULT_LIBRARY_PATH))
TAXONOMY_PATH = env.path('CIRCUITGRAPH_TAXONOMY', default=str(DEFAULT_TAXONOMY_PATH))
DATASET_ROOT = env.path('CIRCUITGRAPH_DATASET_ROOT', default=None)
WORKERS = env.int('CIRCUITGRAPH_WORKERS', default=os.cpu_count() or 1)
LOG_LEVEL = env.str('CIRCUITGRAPH_LOG_LEVEL', default='INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s - %(message)s'
        },
    },
    'filters': {
        'single_line': {
            '()': 'utils.logging_utils.SingleLineFilter',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
            'filters': ['single_line'],
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
    'loggers': {
        # PIL logs every chunk it decodes at DEBUG
        'PIL': {
            'level': 'INFO',
        },
    },
}


def configure_logging(verbose: bool = False):
    config = dict(LOGGING, root=dict(LOGGING['root'], level='DEBUG' if verbose else LOG_LEVEL))
    logging.config.dictConfig(config)
