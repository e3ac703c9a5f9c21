import json
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

DATA = Path(__file__).parent / "data" / "oracles.json"


@pytest.fixture(scope="session")
def oracles():
    return json.loads(DATA.read_text())


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance():
    """Recorder for acceptance-criterion verdicts; echoed in the terminal summary."""

    def record(number: int, title: str, passed: bool, detail: str = "", report_only: bool = False):
        verdict = "PASS" if passed else "FAIL"
        if report_only:
            verdict += " (report)"
        line = f"criterion {number:2d} {verdict:13s} {title}" + (f" | {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
