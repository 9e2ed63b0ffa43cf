import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lratcheck import ClauseDb, read_dimacs  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# fig1 and fig2 share the same formula.
FIG_CLAUSES = [
    (1, 2, -3),
    (-1, -2, 3),
    (2, 3, -4),
    (-2, -3, 4),
    (-1, -3, -4),
    (1, 3, 4),
    (-1, 2, 4),
    (1, -2, -4),
]


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture
def fig_cnf():
    return read_dimacs(FIXTURES / "fig1.cnf")


@pytest.fixture
def fig_db():
    return ClauseDb.from_clauses(FIG_CLAUSES)


@pytest.fixture
def fig1_proof():
    return fixture_text("fig1.lrat")


@pytest.fixture
def fig2_proof():
    return fixture_text("fig2.lrat")


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        name = nodeid.split("::")[-1]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("%s  %s" % (mark, name))
