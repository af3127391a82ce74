import pathlib

import pytest

from senselex.inventory import SenseInventory

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def inventory() -> SenseInventory:
    return SenseInventory()
