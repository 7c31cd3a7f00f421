import json
from pathlib import Path

import pytest

from metroaccess.config import ModelData

DATA = Path(__file__).parent / "data"


def load_fixture(name):
    data = json.loads((DATA / name).read_text())
    data.pop("_comment", None)
    return data


@pytest.fixture(scope="session")
def model():
    return ModelData.builtin()


@pytest.fixture(scope="session")
def table1_fixture():
    return load_fixture("table1_reach.json")


@pytest.fixture(scope="session")
def table3_fixture():
    return load_fixture("table3_mesh.json")


@pytest.fixture(scope="session")
def table6_fixture():
    return load_fixture("table6_energy.json")
