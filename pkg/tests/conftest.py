import pytest

from fcq import PrecisionContext

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(256)


@pytest.fixture(scope="session")
def ctx512():
    return PrecisionContext(512)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
