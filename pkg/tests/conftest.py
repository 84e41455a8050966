import os

import pytest

from lgs_toolkit.core.models import BuilderConfig
from lgs_toolkit.utils.examples import dyck2, even_shift, full_shift, golden_mean

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


@pytest.fixture
def gm():
    return golden_mean()


@pytest.fixture
def even():
    return even_shift()


@pytest.fixture
def full2():
    return full_shift(2)


@pytest.fixture
def d2():
    return dyck2()


@pytest.fixture
def config():
    return BuilderConfig(4)


@pytest.fixture
def out_dir(tmp_path):
    path = tmp_path / "out"
    return str(path)


@pytest.fixture
def data():
    """Path of a shipped shift document."""
    return data_path
