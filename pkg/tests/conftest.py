import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gaugetriple import sampling
from gaugetriple.poly import Poly

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)


@st.composite
def polys(draw, nvars=2, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))
        terms[exps] = draw(small_fractions)
    return Poly(nvars, terms)


def points(n):
    return st.tuples(*[small_fractions] * n)


seeds = st.integers(0, 2**32 - 1)


def rng_from(seed):
    return random.Random(seed)


@pytest.fixture
def rng():
    return random.Random(20261015)


__all__ = ["polys", "points", "seeds", "small_fractions", "rng_from", "sampling"]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
