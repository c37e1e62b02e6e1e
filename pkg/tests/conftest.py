import json
from pathlib import Path

import pytest

from tdcat.core import builtin

DATA = Path(__file__).resolve().parent / "data"
REPO = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def ideal_counts():
    rows = json.loads((DATA / "ideal_counts.json").read_text())["categories"]
    return {(r["category"], r["n"]): r for r in rows}


@pytest.fixture
def walking_arrow():
    return builtin("walking-arrow")


@pytest.fixture
def terminal():
    return builtin("terminal")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
