import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_results: list[tuple[str, bool, str]] = []


class Recorder:
    def __call__(self, criterion: str, passed: bool, detail: str = "") -> None:
        _results.append((criterion, bool(passed), detail))
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        print(line)


@pytest.fixture
def record():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _results:
        terminalreporter.write_line(
            f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else ""))
