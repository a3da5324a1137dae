import numpy as np
import pytest

from qmidconv.qseries import QContext

DEFAULT_QS = (0.3, 0.5)

# lines recorded by test_acceptance.py, echoed once at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=DEFAULT_QS, ids=lambda q: f"q={q}")
def ctx(request):
    return QContext(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
