import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from capax.lattice import SetFunction, monotonic_cover


def random_rational(rng, n, lo=-9, hi=9, max_den=6):
    return SetFunction.exact(n, [Fraction(rng.randint(lo, hi), rng.randint(1, max_den)) for _ in range(1 << n)])


def random_normalized_capacity(rng, n, mode="exact"):
    raw = [Fraction(0)] + [Fraction(rng.randint(0, 20), rng.randint(1, 4)) for _ in range((1 << n) - 1)]
    raw[-1] += 1
    mu = monotonic_cover(SetFunction.exact(n, raw))
    mu = mu * (1 / mu.values[-1])
    return mu if mode == "exact" else mu.to_float()


def brute_monotone(xi, tol=0):
    """All-pairs definition of monotonicity."""
    v = xi.values
    return all(v[a] <= v[b] + tol for b in range(1 << xi.n) for a in range(1 << xi.n) if a & b == a)


@pytest.fixture
def rng():
    return random.Random(20261014)


@st.composite
def rational_set_functions(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    vals = draw(
        st.lists(
            st.fractions(min_value=-10, max_value=10, max_denominator=12),
            min_size=1 << n,
            max_size=1 << n,
        )
    )
    return SetFunction.exact(n, vals)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.report_line(number))
