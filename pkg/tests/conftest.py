import functools

import pytest

from dezagraphs import _kernels
from dezagraphs.constructions import (
    conference_srg,
    construction1,
    construction2,
    hoffman_singleton,
    paley_frobenius_involution,
)


@functools.lru_cache(maxsize=None)
def base(name):
    return {
        "P9c": lambda: paley_frobenius_involution(3),
        "P25": lambda: paley_frobenius_involution(5),
        "conf3": lambda: conference_srg(3),
        "conf5": lambda: conference_srg(5),
        "HS": hoffman_singleton,
    }[name]()


@functools.lru_cache(maxsize=None)
def doubled(name, which):
    s = base(name)
    return construction1(s) if which == "C1" else construction2(s)


BASES = ["P9c", "P25", "conf3", "conf5", "HS"]

backends = ["python"] + (["cython"] if _kernels._core is not None else [])


@pytest.fixture(params=backends)
def backend(request):
    _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(None)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
