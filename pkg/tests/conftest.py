import os
import sys

import pytest

from gtt.lam import LambdaCalculus
from gtt.signature import simple_signature

SEED = int(os.environ.get("GTT_SEED", "0"))


@pytest.fixture
def seed():
    return SEED


@pytest.fixture(scope="session")
def sig_fgh():
    """f, h : a -> b and g : b -> c, plus a constant k : b."""
    return simple_signature("abc", [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "b")],
                            [("k", "b")])


@pytest.fixture(scope="session")
def sig2():
    return simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")])


@pytest.fixture(scope="session")
def sig3():
    return simple_signature("abc", [("f", "a", "b"), ("g", "b", "c"), ("h", "c", "a")])


@pytest.fixture(scope="session")
def lam2():
    return LambdaCalculus(simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")],
                                           [("k", "b"), ("k2", "b")]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(n))
