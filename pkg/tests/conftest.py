import pytest

from vecpart.engine import root_system


@pytest.fixture(scope="session")
def presets():
    return {name: root_system(name) for name in ["A2", "B2", "C2", "G2", "A3", "B3", "C3", "A4"]}
