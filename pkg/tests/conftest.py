from pathlib import Path

import pytest

from tilepump.components.fractal import Generator
from tilepump.utility import logging_utility
from tilepump.utility.json_utility import load_json

# built before any CLI test swaps the standard streams
logging_utility.build_logger()

CORPUS_PATH = Path(__file__).absolute().parent.parent.joinpath('tilepump', 'corpus')


@pytest.fixture
def corpus_path() -> Path:
    return CORPUS_PATH


@pytest.fixture
def load_generator(corpus_path):
    def load(name: str) -> Generator:
        return Generator.from_dict(load_json(corpus_path.joinpath(f'{name}.json')))

    return load


@pytest.fixture
def sierpinski(load_generator):
    return load_generator('sierpinski')
