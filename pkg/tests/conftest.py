"""
Shared fixtures for the qchu-kit test suite
"""
import sys
from pathlib import Path

import pytest

# Add project root to path to import from src
sys.path.append(str(Path(__file__).parent.parent))

from config.config import FIXTURES_DIR
from src.generators import gen_boolean, gen_chain, gen_mo, gen_n5


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def mo2():
    return gen_mo(2)


@pytest.fixture
def bool2():
    return gen_boolean(2)


@pytest.fixture
def bool3():
    return gen_boolean(3)


@pytest.fixture
def n5():
    return gen_n5()


@pytest.fixture
def chain3():
    return gen_chain(3)
