import pytest

from secantx.realnum import RealContext

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def quad():
    return RealContext(113)


@pytest.fixture
def ctx():
    return RealContext(256)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")
