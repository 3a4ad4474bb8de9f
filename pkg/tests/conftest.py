import pytest

from seqasm.corpus import get_entry
from seqasm.corpus.sort import sort_program, sort_state


@pytest.fixture(scope="session")
def sort_prog():
    return sort_program()


@pytest.fixture
def x_state():
    """n=2, i=0, j=1, F(0)=1, F(1)=0."""
    return sort_state([1, 0])


@pytest.fixture(scope="session")
def bisection():
    e = get_entry("bisection")
    return e.load_program(), e.load_state("states/sqrt2.st")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
