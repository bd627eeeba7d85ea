from pathlib import Path

import pytest

from incidence_dga import corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def tri():
    return corpus.full_triangle()


@pytest.fixture
def hollow():
    return corpus.hollow_triangle()


@pytest.fixture
def edge():
    return corpus.edge()


@pytest.fixture
def path():
    return corpus.path()


@pytest.fixture
def ppath():
    return corpus.primed_path()


_CRITERIA: dict = {}


def record_criterion(number, passed, seconds, bound):
    """Collect one acceptance result; parts like "6a"/"6b" fold into 6."""
    key = int(str(number).rstrip("ab"))
    prev = _CRITERIA.get(key)
    if prev is not None:
        passed, seconds = passed and prev[0], seconds + prev[1]
    _CRITERIA[key] = (passed, seconds, bound)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        passed, seconds, bound = _CRITERIA[k]
        terminalreporter.write_line(
            f"criterion {k}: {'PASS' if passed else 'FAIL'} ({seconds:.2f}s, bound {bound:g}s)")
