from pathlib import Path

import pytest

from tlsep.io import bundled_models, load_dera
from tlsep.timed import Alphabet, parse_region_word

DATA = Path(__file__).parent / "data"

AB1 = Alphabet(("a", "b"), 1)

RW1_TEXT = "(a, x_a=0 & x_b=0)(b, x_a=1 & x_b=1)"
RW2_TEXT = "(a, x_a=0 & x_b=1)(b, x_a=1 & x_b=0)"
LATE_B_TEXT = "(a, x_a>1 & x_b>1)(b, x_a>1 & x_b=0)"


@pytest.fixture
def ab1():
    return AB1


@pytest.fixture
def rw1():
    return parse_region_word(RW1_TEXT, AB1)


@pytest.fixture
def rw2():
    return parse_region_word(RW2_TEXT, AB1)


@pytest.fixture(scope="session")
def models():
    return {name: load_dera(path) for name, path in bundled_models().items()}


@pytest.fixture(scope="session")
def fig2(models):
    return models["fig2"]


@pytest.fixture(scope="session")
def fig7a():
    return load_dera(DATA / "fig7a.dera")


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
