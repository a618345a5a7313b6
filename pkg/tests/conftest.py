import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from helpers import R1, R2, R3, kb  # noqa: E402

settings.register_profile("exrules", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exrules")


@pytest.fixture
def kb1():
    return kb(R1, "P(a,b)")


@pytest.fixture
def kb2():
    return kb(R2, "P(a,b)")


@pytest.fixture
def kb3():
    return kb(R3, "R(a,b)")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
