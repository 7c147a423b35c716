import pytest

from foldwidth.catalog import EnumBounds, enumerate_diagrams

import shapes


@pytest.fixture(scope="session")
def default_catalog():
    return enumerate_diagrams(EnumBounds())


def pytest_terminal_summary(terminalreporter):
    if not shapes.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in shapes.RESULTS:
        terminalreporter.write_line(line)
