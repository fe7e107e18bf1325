import functools

import pytest

from ringlab.rings import construct_ring, use_cache

ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def ring(spec):
    return construct_ring(spec)


@pytest.fixture(autouse=True)
def _no_table_cache():
    # tests never touch the user's cache directory, and CLI runs do not leak one
    use_cache(None)
    yield
    use_cache(None)


@pytest.fixture
def acceptance():
    """Record one line per acceptance criterion for the terminal summary."""

    def record(number, ok, detail=""):
        ACCEPTANCE[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
