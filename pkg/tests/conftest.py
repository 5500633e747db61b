"""Shared test plumbing: replay acceptance verdict lines after the run."""

_VERDICTS = []


def record_verdict(line: str) -> None:
    """Store one acceptance PASS/FAIL line; also print it for failure logs."""
    _VERDICTS.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance verdicts")
    for line in _VERDICTS:
        terminalreporter.write_line(line)
