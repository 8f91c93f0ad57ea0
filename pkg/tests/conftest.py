import os

import pytest

from matchkit import validate_instance
from matchkit.files import read_instance

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
EXAMPLE1_PATH = os.path.join(FIXTURES, "example1.txt")

# The worked 5x5 market, 0-based.  Men's rows list woman indices, women's
# rows list man indices, most preferred first.
EXAMPLE1_MEN = [
    [0, 1, 2, 3, 4],
    [0, 3, 4, 1, 2],
    [0, 3, 2, 4, 1],
    [3, 1, 2, 0, 4],
    [4, 3, 0, 1, 2],
]
EXAMPLE1_WOMEN = [
    [4, 3, 0, 1, 2],
    [0, 2, 1, 3, 4],
    [4, 3, 2, 1, 0],
    [3, 1, 0, 2, 4],
    [4, 0, 2, 3, 1],
]

IDENTITY5 = (0, 1, 2, 3, 4)


@pytest.fixture(scope="session")
def example1():
    return validate_instance(EXAMPLE1_MEN, EXAMPLE1_WOMEN)


@pytest.fixture(scope="session")
def example1_path():
    return EXAMPLE1_PATH


@pytest.fixture(scope="session")
def example1_from_file():
    instance, _meta = read_instance(EXAMPLE1_PATH)
    return instance
