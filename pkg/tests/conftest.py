import pytest

_VERDICTS: list[str] = []


class Verdicts:
    def record(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _VERDICTS.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def verdict() -> Verdicts:
    return Verdicts()


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
