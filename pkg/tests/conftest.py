import warnings

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _quiet_degenerate_layouts():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="no user meets the minimum rate")
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
