from pathlib import Path

import pytest

import tncbgen
from tncbgen import load_bag, load_grammar

DATA = Path(tncbgen.__file__).parent / "data"


@pytest.fixture(scope="session")
def data():
    return DATA


@pytest.fixture(scope="session")
def english():
    return load_grammar(DATA / "english.gram")


@pytest.fixture(scope="session")
def dog_bag():
    return load_bag(DATA / "dog.bag.json")


@pytest.fixture(scope="session")
def thethe_bag():
    return load_bag(DATA / "thethe.bag.json")
