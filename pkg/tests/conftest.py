import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lslcopula import make_family, mix, random_diagonal

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile(
    "thorough", max_examples=2000, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

unit = st.floats(0.0, 1.0, allow_nan=False)
open_unit = st.floats(1e-6, 1.0 - 1e-6, allow_nan=False)


@st.composite
def piecewise_diagonals(draw, max_pieces=6):
    k = draw(st.integers(1, max_pieces))
    inner = draw(st.lists(st.floats(0.01, 0.99), min_size=k - 1, max_size=k - 1, unique=True))
    knots = [0.0, *sorted(inner), 1.0]
    if np.any(np.diff(knots) < 1e-3):
        knots = list(np.linspace(0.0, 1.0, k + 1))
    exps = draw(st.lists(st.floats(1.0, 2.0), min_size=k, max_size=k))
    return make_family("piecewise", knots=knots, exponents=exps)


family_diagonals = st.one_of(
    st.builds(lambda a: make_family("ua", a=a), unit),
    st.builds(lambda a: make_family("la", a=a), unit),
    st.builds(lambda p: make_family("power", p=p), st.floats(1.0, 2.0)),
    st.builds(lambda a: make_family("frechet", alpha=a), unit),
    st.builds(lambda a, b: make_family("mo_product", alpha=a, beta=b), unit, unit),
    st.builds(lambda s: random_diagonal(s), st.integers(0, 2**32)),
    piecewise_diagonals(),
)


@st.composite
def diagonals(draw):
    """Any admissible diagonal, possibly a two-component mixture."""
    d = draw(family_diagonals)
    if draw(st.booleans()):
        w = draw(unit)
        d = mix([d, draw(family_diagonals)], [w, 1.0 - w])
    return d


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
