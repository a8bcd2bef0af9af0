import pytest

from compo_mbt.lts import Lts
from compo_mbt.modelio import load_bundled

# filled by test_acceptance.py, printed after the run
CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def parking():
    return load_bundled("parking.mbt")


@pytest.fixture(scope="session")
def adapted():
    return load_bundled("parking_adapted.mbt")


@pytest.fixture(scope="session")
def composed():
    return load_bundled("composed.mbt")


@pytest.fixture(scope="session")
def sensor(parking):
    return parking["Sensor"]


@pytest.fixture(scope="session")
def autopark(parking):
    return parking["Autopark"]


def make(edges, inputs, outputs, initial="0", name=""):
    """Small helper for hand-built models in tests."""
    return Lts.build(edges, inputs, outputs, initial, name=name)
