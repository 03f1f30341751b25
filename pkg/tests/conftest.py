import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from orbgrand.codes import BchCode, PolarCode


@pytest.fixture(scope="session")
def bch():
    return BchCode()


@pytest.fixture(scope="session")
def polar():
    return PolarCode.default()


@pytest.fixture(scope="session")
def fixtures_dir():
    return Path(__file__).parent / "fixtures"
