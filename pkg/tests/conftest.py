from fractions import Fraction as F

import pytest
from hypothesis import settings

from cutlab.geometry import realize_cut_system

settings.register_profile("default", deadline=None)
settings.load_profile("default")

LADDER_SPECS = [({0}, F(3, 4)), ({0, 2, 3}, F(1, 4)), ({0, 1, 3}, F(1, 4)), ({0, 1, 2}, F(1, 4))]


@pytest.fixture
def ladder():
    return realize_cut_system(3, LADDER_SPECS)


@pytest.fixture
def parallel_pair():
    return realize_cut_system(3, [({0, 1}, F(1, 3)), ({0, 1}, F(2, 3))])


@pytest.fixture
def empty3():
    return realize_cut_system(3, [])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
