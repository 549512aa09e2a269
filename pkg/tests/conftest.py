import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

GROUP_C_TEXT = """\
teams: Argentina, Poland, Mexico, "Saudi Arabia"
Argentina 2:0 Poland
Argentina 2:0 Mexico
Argentina 1:2 "Saudi Arabia"
Poland 0:0 Mexico
Poland 2:0 "Saudi Arabia"
Mexico 2:1 "Saudi Arabia"
"""


@pytest.fixture
def group_c_text():
    return GROUP_C_TEXT


@pytest.fixture
def group_c_matrix():
    return np.array([
        [7 / 6, 2, 2, 1],
        [0, 4 / 6, 0, 2],
        [0, 0, 5 / 6, 2],
        [2, 0, 1, 8 / 6],
    ])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def _record(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
