import random
from fractions import Fraction

import pytest

from capax.bounds import bound_spec, extremal_lower, extremal_upper
from capax.lattice import SetFunction, derivative, popcount, validate_capacity
from capax.transforms import banzhaf, interaction, mobius
from capax.verifier import (
    CapExceeded,
    argmax_tables,
    count_monotone_boolean_functions,
    derivative_maxima,
    enumerate_vertices,
    extremize,
    extremize_all,
    naive_transform_oracle,
    set_function_to_table,
    slow_checks_enabled,
    table_to_set_function,
    verify_derivative_maxima,
)

from conftest import brute_monotone, random_rational

TRANSFORM_FUNCS = {"mobius": mobius, "interaction": interaction, "banzhaf": banzhaf}


def brute_vertices(n):
    """All {0,1} normalized capacities by filtering every truth table."""
    size = 1 << n
    out = []
    for t in range(1 << size):
        if t & 1 or not t >> (size - 1) & 1:
            continue
        mu = table_to_set_function(t, n)
        if brute_monotone(mu):
            out.append(t)
    return out


# --- enumeration -----------------------------------------------------------


def test_vertex_counts_small():
    assert [len(enumerate_vertices(n)) for n in range(1, 6)] == [1, 4, 18, 166, 7579]


def test_dedekind_counter_independent():
    assert [count_monotone_boolean_functions(n) for n in range(0, 6)] == [2, 3, 6, 20, 168, 7581]
    for n in range(1, 6):
        assert len(enumerate_vertices(n)) == count_monotone_boolean_functions(n) - 2


def test_enumeration_matches_brute_force_up_to_4():
    for n in range(1, 5):
        tables = [int(t) for t in enumerate_vertices(n).tables]
        assert len(set(tables)) == len(tables)
        assert sorted(tables) == brute_vertices(n)


def test_every_vertex_is_a_normalized_capacity():
    for n in range(1, 5):
        for mu in enumerate_vertices(n):
            assert validate_capacity(mu).is_normalized_capacity
            assert set(mu.values) <= {0, 1}
    tables = enumerate_vertices(5).tables
    assert len(set(int(t) for t in tables)) == len(tables)


def test_enumeration_order_is_depth_first_zero_first():
    tables = [int(t) for t in enumerate_vertices(2).tables]
    # masks visited as {1}, {2}; 0 tried before 1
    assert tables == [0b1000, 0b1100, 0b1010, 0b1110]


def test_truth_table_round_trip():
    mu = extremal_upper(0b0111, 4)
    assert table_to_set_function(set_function_to_table(mu), 4) == mu
    with pytest.raises(Exception):
        set_function_to_table(SetFunction.exact(1, [0, "1/2"]))


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_vertices(7)
    with pytest.raises(CapExceeded):
        verify_derivative_maxima(1, 6)
    with pytest.raises(CapExceeded):
        naive_transform_oracle("mobius", SetFunction.zeros(13))


# --- extremes --------------------------------------------------------------


def test_extremize_examples():
    r = extremize("mobius", 0b1111, 4)
    assert (r.max_value, r.min_value) == (3, -3)
    r = extremize("mobius", 0b11111, 5)
    assert (r.max_value, r.min_value) == (6, -4)
    r = extremize("banzhaf", 0b1111, 4)
    assert (r.max_value, r.min_value) == (3, -3)
    assert r.matches_bounds()
    assert r.as_dict()["ok"] is True


def test_mobius_extremes_match_bounds_up_to_5():
    for n in range(1, 6):
        for A, r in extremize_all("mobius", n).items():
            b = bound_spec(popcount(A), n)
            assert (r.max_value, r.min_value) == (b.upper, b.lower)
            if popcount(A) == 1 and n > 1:
                assert (r.max_value, r.min_value) == (1, 0)


def test_interaction_and_banzhaf_share_mobius_extremes():
    for n in range(1, 6):
        base = extremize_all("mobius", n)
        for t in ("interaction", "banzhaf"):
            for A, r in extremize_all(t, n).items():
                assert (r.max_value, r.min_value) == (base[A].max_value, base[A].min_value)


def test_witnesses_attain_reported_values():
    for n in (3, 4, 5):
        for t, f in TRANSFORM_FUNCS.items():
            for A, r in extremize_all(t, n).items():
                assert f(r.max_witness)[A] == r.max_value
                assert f(r.min_witness)[A] == r.min_value
                assert isinstance(r.max_value, Fraction)


def test_extremal_capacities_are_among_optimal_vertices():
    for n in (2, 3, 4):
        for A in range(1, 1 << n):
            assert set_function_to_table(extremal_upper(A, n)) in argmax_tables("mobius", A, n)
            assert set_function_to_table(extremal_lower(A, n)) in argmax_tables("mobius", A, n, lowest=True)


# --- derivative maxima -----------------------------------------------------


def test_derivative_maxima_examples():
    assert verify_derivative_maxima(0b0111, 4)
    assert set(derivative_maxima(0b0111, 4).values()) == {1}
    assert verify_derivative_maxima(0b01111, 5)
    assert set(derivative_maxima(0b01111, 5).values()) == {3}
    assert verify_derivative_maxima(0b111, 3)
    assert list(derivative_maxima(0b111, 3)) == [0]


def test_derivative_maxima_all_sets_up_to_4():
    for n in range(1, 5):
        for A in range(1, 1 << n):
            assert verify_derivative_maxima(A, n)


def test_derivative_maxima_against_direct_loop():
    n, A = 4, 0b0011
    vertices = list(enumerate_vertices(n))
    best = derivative_maxima(A, n)
    for B, v in best.items():
        assert v == max(derivative(mu, A, B) for mu in vertices)


# --- naive oracles ---------------------------------------------------------


def test_naive_zero_and_float():
    z = SetFunction.zeros(4)
    for t in ("mobius", "zeta", "interaction", "interaction-mobius", "banzhaf", "inverse-interaction"):
        assert naive_transform_oracle(t, z) == z
    xi = random_rational(random.Random(31), 4)
    assert naive_transform_oracle("interaction", xi.to_float()).allclose(interaction(xi).to_float(), atol=1e-12)
    with pytest.raises(Exception):
        naive_transform_oracle("nope", xi)


def test_naive_mobius_matches_fast_200_samples():
    rng = random.Random(32)
    for _ in range(200):
        xi = random_rational(rng, 4)
        assert naive_transform_oracle("mobius", xi) == mobius(xi)


# --- n = 6 -----------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.skipif(not slow_checks_enabled(), reason="set CAPAX_SLOW_TESTS=1")
def test_n6_exhaustive():
    vertices = enumerate_vertices(6)
    assert len(vertices) == 7828352 == count_monotone_boolean_functions(6) - 2
    for t in ("mobius", "interaction", "banzhaf"):
        for A, r in extremize_all(t, 6, vertices).items():
            assert r.matches_bounds(), (t, A)
