import random

import pytest

from rqcs.field import Field
from rqcs.params import setup
from rqcs.scheme import keygen
from rqcs.xof import Xof

SMALL = dict(m=12, n=10, w=2, w_g=2, w_r=2)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture(scope="session")
def small_params():
    return setup("custom", **SMALL)


@pytest.fixture(scope="session")
def small_keys(small_params):
    return keygen(small_params, Xof(b"small-keys"))


@pytest.fixture(params=[3, 8, 10, 12])
def small_field(request):
    return Field.of_degree(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
