import functools
import sys

import pytest

from fctheory.fcsets import enumerate_fcsets, members
from fctheory.fusion import build_modular_data
from fctheory.io import catalog_names, get_model

NAMES = catalog_names()


@functools.lru_cache(maxsize=None)
def model(name):
    mf = get_model(name)
    md = build_modular_data(mf.to_fusion_data(), mf.smatrix)
    return md, enumerate_fcsets(md)


def labels(md, bits):
    return tuple(md.labels[p] for p in members(bits))


def bits(md, *names):
    return sum(1 << md.index(x) for x in names)


@pytest.fixture(params=NAMES)
def catalog_model(request):
    return model(request.param)


@pytest.fixture
def ising():
    return model("ising")


@pytest.fixture
def ds3():
    return model("ds3")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
