import pytest

_RESULTS = []


@pytest.fixture(scope="session")
def record_criterion():
    """Record one acceptance line: ``record_criterion(label, passed, detail)``."""

    def record(label, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
        _RESULTS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _RESULTS:
            terminalreporter.write_line(line)
