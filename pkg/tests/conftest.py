import sys

import pytest

from pcoalg import SuperDomain


@pytest.fixture(scope="session")
def r32():
    return SuperDomain(3, 2)


@pytest.fixture(scope="session")
def r12():
    return SuperDomain(1, 2)


@pytest.fixture(scope="session")
def r02():
    return SuperDomain(0, 2)


@pytest.fixture(scope="session")
def model():
    from pcoalg.models import d3n1_model

    return d3n1_model()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS = mod.RESULTS
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
