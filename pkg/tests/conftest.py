import pytest

from orbitcover.scale_core import PitchClassSet, Scale

from acceptance_log import ACCEPTANCE_LINES

C_MAJOR = (0, 2, 4, 5, 7, 9, 11)
F_MAJOR = (5, 7, 9, 10, 0, 2, 4)
EXOTIC = (4, 6, 7, 10, 0, 1, 3)


@pytest.fixture
def c_major_pcs():
    return PitchClassSet.of(12, C_MAJOR)


@pytest.fixture
def c_major():
    return Scale.of(12, C_MAJOR)


@pytest.fixture
def f_major():
    return Scale.of(12, F_MAJOR)


@pytest.fixture
def exotic():
    return Scale.of(12, EXOTIC)


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
