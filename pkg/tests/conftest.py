import sys
from pathlib import Path

import pytest
from hypothesis import settings

from curvelab.parsing import parse_curve

sys.path.insert(0, str(Path(__file__).parent))

# same examples on every run
settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")

E_TEXT = "y = x^(3/2) + x^(13/6)\ny = x^(7/3)\n"


@pytest.fixture
def E():
    return parse_curve(E_TEXT)


@pytest.fixture
def cusp():
    return parse_curve("y = x^(3/2)")


@pytest.fixture
def smooth():
    return parse_curve("y = 2*x")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
