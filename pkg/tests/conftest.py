import pathlib

import pytest

from courserec.model import load_builtin_tables

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def tables():
    return load_builtin_tables()


@pytest.fixture(scope="session")
def vocabulary(tables):
    return tables.vocabulary


@pytest.fixture(scope="session")
def corpus_dir():
    return FIXTURES / "corpus"


@pytest.fixture(scope="session")
def ground_truth_path():
    return FIXTURES / "corpus_ground_truth.jsonl"
