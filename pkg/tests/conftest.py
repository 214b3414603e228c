import random
import sys

import pytest

from trisieve import kernels
from trisieve.selftest import random_graph, random_setfunction


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=["python", "native"])
def kernel(request):
    if request.param == "native" and not kernels.native_available():
        pytest.skip("compiled kernels not built")
    with kernels.using(request.param):
        yield request.param


def triple(rng, n, q, lo=-99, hi=99):
    return tuple(random_setfunction(rng, n, q, lo, hi) for _ in range(3))


__all__ = ["triple", "random_graph", "random_setfunction"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
