import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "mucurves" / "fixtures"


@pytest.fixture
def fixture_lines():
    def load(name):
        text = (FIXTURES / name).read_text()
        return [line for line in text.splitlines() if line.strip()]
    return load


@pytest.fixture
def fixture_json():
    def load(name):
        return json.loads((FIXTURES / name).read_text())
    return load


@pytest.fixture(scope="module")
def fixture_json_module():
    def load(name):
        return json.loads((FIXTURES / name).read_text())
    return load
