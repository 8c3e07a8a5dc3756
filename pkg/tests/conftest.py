import sys

import pytest

from groupcolor.generator import fixture


@pytest.fixture
def example():
    return fixture("example")


@pytest.fixture
def d2chi3():
    return fixture("d2chi3")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
