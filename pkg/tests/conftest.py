import json
from pathlib import Path

import pytest

from boperators.basefield import BaseField, FunctionField

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN


def load_fixture(name):
    with open(FIXTURES / name, encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def F2():
    return BaseField(2)


@pytest.fixture(scope="session")
def F3():
    return BaseField(3)


@pytest.fixture(scope="session")
def F4():
    return BaseField(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def Kxy(F2):
    return FunctionField(F2, ("x", "y"))
