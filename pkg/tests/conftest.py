import pytest

_ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_report():
    """Record a one-line verdict, echoed in the terminal summary."""

    def record(line: str) -> None:
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
