import pytest
from hypothesis import settings

from tmcurves import RootOfUnity as U, thue_morse_curve

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def ma_holdener():
    return thue_morse_curve(2, [(1, U(1, 0)), (0, U(6, 1))], "Ma-Holdener")


def zantema():
    return thue_morse_curve(2, [(1, U(3, 1)), (1, U(2, 1))], "Zantema")


def pentagon_turn():
    return thue_morse_curve(2, [(1, U(5, 2)), (0, U(5, 1))], "pentagon-turn")


def straight_line():
    return thue_morse_curve(2, [(1, U(6, 1)), (1, U(6, -1))], "straight-line")


def koch_tm():
    # steps 1 and -1, both turning by zeta_3
    return thue_morse_curve(2, [(1, U(3, 1)), (-1, U(3, 1))], "KochTM")


@pytest.fixture
def curves():
    return {"mh": ma_holdener(), "zantema": zantema(), "pentagon_turn": pentagon_turn(), "straight_line": straight_line(), "koch": koch_tm()}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
