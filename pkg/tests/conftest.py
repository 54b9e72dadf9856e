import pytest

from binoc import parse_ideal


def R(gens, names="x y", char=0):
    """Shorthand for an ideal over QQ or GF(char)."""
    return parse_ideal(f"ring {names}; char {char}; ideal {gens}")


@pytest.fixture
def twosoc():
    return R("x^2*y - x*y^2, x^3, y^3")


@pytest.fixture
def diag():
    return R("x^2 - x*y, x*y - y^2, x^3")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
