import numpy as np
import pytest

from sictool.sic import family_sic

T_GRID = np.linspace(0, np.pi / 3, 25)
GENERIC_T = np.pi / 5
T_ZERO = 0.0
T_SPECIAL = 2 * np.pi / 9


@pytest.fixture(scope="session")
def generic_povm():
    return family_sic(GENERIC_T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
