import math

import pytest

from capax.bounds import (
    alternating_binomial_sum,
    asymptotic_estimate,
    binomial,
    bound_spec,
    bound_table,
    extremal_lower,
    extremal_upper,
    l_index,
    l_prime_index,
    symmetric_vertex,
    symmetric_vertex_mobius_at_n,
    vertex_mobius_matrix,
)
from capax.lattice import PreconditionError, popcount, unanimity, validate_capacity
from capax.transforms import mobius

UPPER_ROW = (1, 1, 1, 3, 6, 10, 15, 35, 70, 126, 210, 462)
LOWER_ROW = (0, -1, -2, -3, -4, -10, -20, -35, -56, -126, -252, -462)

# frozen rows of (-1)^k C(n-1, k)
VERTEX_ROWS = {
    1: (1,),
    2: (1, -1),
    3: (1, -2, 1),
    4: (1, -3, 3, -1),
    5: (1, -4, 6, -4, 1),
    6: (1, -5, 10, -10, 5, -1),
    7: (1, -6, 15, -20, 15, -6, 1),
    8: (1, -7, 21, -35, 35, -21, 7, -1),
    9: (1, -8, 28, -56, 70, -56, 28, -8, 1),
    10: (1, -9, 36, -84, 126, -126, 84, -36, 9, -1),
    11: (1, -10, 45, -120, 210, -252, 210, -120, 45, -10, 1),
    12: (1, -11, 55, -165, 330, -462, 462, -330, 165, -55, 11, -1),
}


def test_binomial_exact():
    for n in range(30):
        for k in range(-1, n + 2):
            assert binomial(n, k) == (math.comb(n, k) if 0 <= k <= n else 0)
    assert binomial(23, 11) == 1352078


def test_indices():
    assert [l_index(a) for a in range(1, 9)] == [0, 0, 0, 2, 2, 2, 2, 4]
    assert [l_prime_index(a) for a in range(1, 10)] == [1, 1, 1, 1, 3, 3, 3, 3, 5]


def test_bound_spec_examples():
    b = bound_spec(5, 5)
    assert (b.upper, b.lower) == (6, -4)
    b = bound_spec(12, 12)
    assert (b.upper, b.lower) == (462, -462)
    b = bound_spec(1, 3)
    assert (b.upper, b.lower) == (1, 0)
    b = bound_spec(1, 1)
    assert (b.upper, b.lower) == (1, 1)
    with pytest.raises(PreconditionError):
        bound_spec(4, 3)
    with pytest.raises(PreconditionError):
        bound_spec(0, 3)


def test_bound_table_rows():
    rows = bound_table(12)
    assert tuple(r[1] for r in rows) == UPPER_ROW
    assert tuple(r[2] for r in rows) == LOWER_ROW
    assert bound_table(2) == [(1, 1, 0), (2, 1, -1)]


def test_extremal_upper_examples():
    mu = extremal_upper(15, 4)
    assert mu == symmetric_vertex(2, 4)
    assert all(mu[B] == (popcount(B) >= 2) for B in range(16))
    assert mobius(mu)[15] == 3
    single = extremal_upper(0b100, 3)
    assert single == unanimity(3, 0b100)
    assert mobius(single)[0b100] == 1
    with pytest.raises(PreconditionError):
        extremal_upper(0, 3)


def test_extremal_upper_on_proper_subset_is_at_most_4_additive():
    A, n = 0b001111, 6
    m = mobius(extremal_upper(A, n))
    assert m[A] == 3
    assert all(m[B] == 0 for B in range(64) if popcount(B) > 4)


def test_extremal_lower_examples():
    mu = extremal_lower(31, 5)
    assert all(mu[B] == (popcount(B) >= 2) for B in range(32))
    assert mobius(mu)[31] == -4
    mu = extremal_lower(3, 2)
    assert all(mu[B] == (popcount(B) >= 1) for B in range(4))
    assert mobius(mu)[3] == -1
    assert mobius(extremal_lower((1 << 12) - 1, 12)).values[-1] == -462


def test_extremal_lower_singleton():
    mu = extremal_lower(0b010, 3)
    assert validate_capacity(mu).is_normalized_capacity
    assert mobius(mu)[0b010] == 0
    assert mu == unanimity(3, 0b001)
    assert mobius(extremal_lower(1, 1))[1] == 1


def test_extremal_capacities_are_valid_vertices():
    for n in range(1, 7):
        for A in range(1, 1 << n):
            for mu in (extremal_upper(A, n), extremal_lower(A, n)):
                assert set(mu.values) <= {0, 1}
                assert validate_capacity(mu).is_normalized_capacity


def test_extremal_values_attain_bounds_up_to_n8():
    for n in range(1, 9):
        for A in range(1, 1 << n):
            b = bound_spec(popcount(A), n)
            assert mobius(extremal_upper(A, n))[A] == b.upper
            assert mobius(extremal_lower(A, n))[A] == b.lower


def test_symmetric_vertex_examples():
    assert symmetric_vertex(0, 3) == unanimity(3, 7)
    assert all(v == (B != 0) for B, v in enumerate(symmetric_vertex(3, 4)))
    with pytest.raises(PreconditionError):
        symmetric_vertex(4, 4)


def test_symmetric_vertex_mobius_closed_form():
    assert symmetric_vertex_mobius_at_n(4, 9) == 70
    assert symmetric_vertex_mobius_at_n(5, 12) == -462
    assert symmetric_vertex_mobius_at_n(0, 1) == 1
    for n in range(1, 10):
        for k in range(n):
            assert mobius(symmetric_vertex(k, n)).values[-1] == symmetric_vertex_mobius_at_n(k, n)


def test_alternating_binomial_sum():
    assert alternating_binomial_sum(3, 0) == 1
    assert alternating_binomial_sum(5, 2) == 1 - 5 + 10 == 6
    assert alternating_binomial_sum(12, 5) == 1 - 12 + 66 - 220 + 495 - 792 == -462
    for n in range(1, 31):
        for k in range(n):
            assert alternating_binomial_sum(n, k) == (-1) ** k * math.comb(n - 1, k)
    with pytest.raises(PreconditionError):
        alternating_binomial_sum(3, 3)


def test_vertex_matrix_matches_table():
    rows = vertex_mobius_matrix(12)
    for r in rows:
        assert r.values == VERTEX_ROWS[r.n]
        assert r.max_k == 2 * (r.n // 4)
        assert r.min_k == (None if r.n == 1 else 2 * ((r.n - 1) // 4) + 1)
    assert rows[6].values == (1, -6, 15, -20, 15, -6, 1)
    assert (rows[6].max_k, rows[6].min_k) == (2, 3)
    assert rows[9].values[rows[9].max_k] == 126 and rows[9].values[rows[9].min_k] == -126


def test_markers_are_true_extremes_up_to_16():
    for r in vertex_mobius_matrix(16):
        even = [math.comb(r.n - 1, k) for k in range(0, r.n, 2)]
        assert max(even) == math.comb(r.n - 1, r.max_k)
        if r.n >= 2:
            assert min(r.values) == r.values[r.min_k]


def test_vertex_rows_alternate_and_sum_to_zero():
    for r in vertex_mobius_matrix(14):
        assert all(v * (-1) ** k > 0 for k, v in enumerate(r.values))
        if r.n >= 2:
            assert sum(r.values) == 0


def test_asymptotic_estimate_values():
    assert asymptotic_estimate(2) == pytest.approx(4 / math.sqrt(math.pi), rel=1e-12)
    assert asymptotic_estimate(2) == pytest.approx(2.2568, abs=1e-4)
    assert asymptotic_estimate(12) == pytest.approx(943.5, abs=0.1)
    for n in range(2, 30):
        ratio = asymptotic_estimate(n + 2) / asymptotic_estimate(n)
        assert ratio == pytest.approx(4 * math.sqrt(n / (n + 2)), rel=1e-12)
    assert math.isfinite(asymptotic_estimate(1000))
    with pytest.raises(PreconditionError):
        asymptotic_estimate(1)
