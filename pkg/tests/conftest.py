import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ultratree import random_space, space_from_tree, validate  # noqa: E402
from ultratree.formats import parse_tree  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def three_point():
    """d(x0,x1) = d(x1,x2) = 2, d(x0,x2) = 1."""
    return validate([[0, 2, 1], [2, 0, 2], [1, 2, 0]])


def two_cherries():
    return space_from_tree(parse_tree("(2 (1 0 0) (1 0 0))"))


def fig_not_4_ary():
    """Six points: x1, x2 and a four-point ball {x3..x6} under the root."""
    return space_from_tree(parse_tree("(2 0 0 (1 0 0 0 0))"))


@st.composite
def spaces(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    s = 1 if n == 1 else draw(st.integers(2, n))
    return random_space(n, s, draw(st.integers(0, 10**6)))


@st.composite
def rationals(draw):
    return Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 6)))


@pytest.fixture
def X3():
    return three_point()
