import math

import numpy as np
import pytest
from hypothesis import strategies as st

from jointroute.files import generate
from jointroute.model import Instance

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def fix1():
    return Instance.from_depot([(1, 0)], [(1, 1)], (0, 0), name="fix1")


@pytest.fixture
def fix2():
    return Instance.from_depot([(1, 0), (2, 0)], [(1, 1), (2, 1)], (0, 0), name="fix2")


def random_instance(n, seed, extent=1.0):
    return generate(n, seed, extent)


coords = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def instances(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pts = draw(st.lists(st.tuples(coords, coords), min_size=2 * n + 2, max_size=2 * n + 2))
    arr = np.array(pts, dtype=float)
    return Instance(arr[: n + 1], arr[n + 1:], name="hyp")


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
