import pytest

from fdnorm import parse_schema
from helpers import fixture_text


def _load(name):
    return parse_schema(fixture_text(name)).schema


@pytest.fixture
def ex1():
    return _load("example1.fd")


@pytest.fixture
def ex2():
    return _load("example2.fd")


@pytest.fixture
def ex3():
    return _load("example3.fd")


@pytest.fixture
def ex4():
    return _load("example4.fd")


@pytest.fixture
def minimal_overlap():
    return _load("minimal_overlap.fd")


@pytest.fixture
def students():
    return _load("students.fd")


@pytest.fixture
def case4b():
    return _load("case4b.fd")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
