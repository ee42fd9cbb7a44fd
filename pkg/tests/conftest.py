from pathlib import Path

import pytest

from gautomata import gen_builtin
from gautomata.formats import load_automaton

DATA = Path(__file__).resolve().parent.parent / "src" / "gautomata" / "data"
ST_PARALLEL = DATA / "st_parallel.gaut"


@pytest.fixture
def lock():
    return gen_builtin("lock")


@pytest.fixture
def types():
    return gen_builtin("types")


@pytest.fixture
def st_parallel():
    return load_automaton(ST_PARALLEL)


def pytest_terminal_summary(terminalreporter):
    """Print the one-line verdict of every acceptance criterion that ran."""
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
