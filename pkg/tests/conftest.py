import pytest
from hypothesis import settings

# Fixed examples keep the suite's run time predictable.
settings.register_profile("fixed", derandomize=True)
settings.load_profile("fixed")

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, failures: list[str]) -> None:
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number} {status}: {title}"
        if failures:
            line += f" ({len(failures)} failing checks; first: {failures[0]})"
        print(line)
        _LINES.append(line)
        assert not failures, "\n".join(failures[:20])

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
