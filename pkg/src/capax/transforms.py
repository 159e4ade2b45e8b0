"""Zeta, Moebius, interaction and Banzhaf transforms of set functions.

Fast routes are subset-lattice dynamic programs (``O(n 2^n)``, or
``O(n^2 2^n)`` for the transforms whose weights depend on ``|B| - |A|``).
Exact set functions are processed as integers over a common denominator, so
all arithmetic is on Python ints until the final division.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _backend
from .lattice import EXACT, FLOAT, SetFunction, popcounts, small_fraction

__all__ = [
    "zeta",
    "mobius",
    "interaction",
    "interaction_from_derivatives",
    "banzhaf",
    "banzhaf_from_derivatives",
    "bernoulli",
    "inverse_interaction",
    "shapley_value",
]


# --- exact-mode plumbing ---------------------------------------------------


def _scaled(xi: SetFunction) -> tuple[np.ndarray, int]:
    """Integer numerators over the least common denominator of ``xi``."""
    den = 1
    for v in xi.values:
        den = math.lcm(den, v.denominator)
    ints = np.empty(len(xi), dtype=object)
    ints[:] = [v.numerator * (den // v.denominator) for v in xi.values]
    return ints, den


def _unscale(xi: SetFunction, ints: np.ndarray, den: int) -> SetFunction:
    out = np.empty(len(ints), dtype=object)
    if den == 1:
        out[:] = [small_fraction(int(x)) for x in ints]
    else:
        out[:] = [Fraction(int(x), den) for x in ints]
    return SetFunction._wrap(xi.ground, out, EXACT)


def _level_combine(rows: np.ndarray, n: int, coef) -> np.ndarray:
    """out[..., A] = sum_{B superset A} coef[|B|-|A|] * rows[..., B].

    Runs one superset-sum pass per cardinality level of B. ``coef`` has
    ``n + 1`` entries of any scalar type compatible with ``rows``.
    """
    levels = popcounts(n)
    dtype = rows.dtype
    out = np.zeros_like(rows)
    for j in range(n + 1):
        if not np.any(levels == j):
            continue
        part = np.where(levels == j, rows, 0).astype(dtype)
        part = np.ascontiguousarray(part)
        _backend.superset_sum_inplace(part, n)
        weights = np.zeros(1 << n, dtype=dtype)
        ok = levels <= j
        w = np.empty(int(ok.sum()), dtype=object)
        w[:] = [coef[j - a] for a in levels[ok]]
        weights[ok] = w
        out += part * weights
    return out


# --- zeta and Moebius ------------------------------------------------------


def zeta(m: SetFunction) -> SetFunction:
    """xi(A) = sum over B subset of A of m(B)."""
    if m.mode == EXACT:
        ints, den = _scaled(m)
        _backend.zeta_inplace(ints, m.n)
        return _unscale(m, ints, den)
    work = m.working_copy()
    _backend.zeta_inplace(work, m.n)
    return SetFunction._wrap(m.ground, work, FLOAT)


def mobius(xi: SetFunction) -> SetFunction:
    """m(A) = sum over B subset of A of (-1)^|A - B| xi(B); inverse of :func:`zeta`."""
    if xi.mode == EXACT:
        ints, den = _scaled(xi)
        _backend.mobius_inplace(ints, xi.n)
        return _unscale(xi, ints, den)
    work = xi.working_copy()
    _backend.mobius_inplace(work, xi.n)
    return SetFunction._wrap(xi.ground, work, FLOAT)


# --- interaction -----------------------------------------------------------


@lru_cache(maxsize=None)
def _harmonic_lcm(n: int) -> int:
    return math.lcm(*range(1, n + 2))


def _interaction_from_mobius_ints(m_ints: np.ndarray, n: int) -> tuple[np.ndarray, int]:
    """Scaled interaction ``I * L`` with ``L = lcm(1..n+1)``; exact for integer input."""
    L = _harmonic_lcm(n)
    coef = [L // (d + 1) for d in range(n + 1)]
    return _level_combine(m_ints, n, coef), L


def interaction(xi: SetFunction) -> SetFunction:
    """Interaction transform via Moebius coefficients.

    I(A) = sum over B superset of A of m(B) / (|B| - |A| + 1). Singleton
    entries are the Shapley values of ``xi``.
    """
    n = xi.n
    m = mobius(xi)
    if xi.mode == EXACT:
        ints, den = _scaled(m)
        out, L = _interaction_from_mobius_ints(ints, n)
        return _unscale(xi, out, den * L)
    coef = [1.0 / (d + 1) for d in range(n + 1)]
    return SetFunction._wrap(xi.ground, _level_combine(m.working_copy(), n, coef), FLOAT)


def _derivative_table_sums(values: np.ndarray, n: int, weights_for):
    """Yield ``(A, sum_B W[|B|] * Delta_A f(B))`` for every mask A.

    B ranges over subsets of the complement of A and ``W = weights_for(|A|)``.
    The derivative arrays are built depth-first with
    ``Delta_{A+j} f(B) = Delta_A f(B + j) - Delta_A f(B)``, keeping only one
    array per depth.
    """
    size = 1 << n
    idx = np.arange(size)
    levels = popcounts(n)
    stack = [(0, values, -1)]
    while stack:
        A, table, top = stack.pop()
        free = (idx & A) == 0
        W = weights_for(int(levels[A]))
        w = np.empty(int(free.sum()), dtype=object)
        w[:] = [W[b] for b in levels[free]]
        if table.dtype != object:
            w = w.astype(table.dtype)
        yield A, (table[free] * w).sum()
        for j in range(top + 1, n):
            bit = 1 << j
            child = table[idx | bit] - table
            stack.append((A | bit, child, j))


def interaction_from_derivatives(xi: SetFunction) -> SetFunction:
    """Interaction transform as a weighted average of derivatives.

    I(A) = sum over B in the complement of A of
    (n-b-a)! b! / (n-a+1)! * Delta_A xi(B). This route never forms the
    Moebius transform and is kept as the second, independent entry point.
    """
    n = xi.n
    f = math.factorial
    if xi.mode == EXACT:
        ints, den = _scaled(xi)
        out = np.empty(1 << n, dtype=object)
        # scaled by (n-a+1)!, leaving integer weights (n-a-b)! b!
        for A, total in _derivative_table_sums(
            ints, n, lambda a: [f(n - a - b) * f(b) if b <= n - a else 0 for b in range(n + 1)]
        ):
            a = bin(A).count("1")
            out[A] = Fraction(int(total), den * f(n - a + 1))
        return SetFunction._wrap(xi.ground, out, EXACT)
    out = np.empty(1 << n, dtype=np.float64)

    def weights(a):
        return [float(Fraction(f(n - a - b) * f(b), f(n - a + 1))) if b <= n - a else 0.0 for b in range(n + 1)]

    for A, total in _derivative_table_sums(xi.working_copy(), n, weights):
        out[A] = total
    return SetFunction._wrap(xi.ground, out, FLOAT)


def shapley_value(xi: SetFunction) -> list:
    """Shapley values of elements 1..n (singleton entries of the interaction)."""
    I = interaction(xi)
    return [I.values[1 << i] for i in range(xi.n)]


# --- Banzhaf ---------------------------------------------------------------


def _banzhaf_from_mobius_ints(m_ints: np.ndarray, n: int) -> tuple[np.ndarray, int]:
    """Scaled Banzhaf interaction ``I_B * 2^n``; exact for integer input."""
    levels = popcounts(n)
    work = m_ints * (np.int64(1) << (n - levels)).astype(m_ints.dtype)
    work = np.ascontiguousarray(work)
    _backend.superset_sum_inplace(work, n)
    return work * (np.int64(1) << levels).astype(m_ints.dtype), 1 << n


def banzhaf(xi: SetFunction) -> SetFunction:
    """Banzhaf interaction via Moebius: I_B(A) = sum over B superset of A of m(B) / 2^(|B|-|A|)."""
    n = xi.n
    m = mobius(xi)
    if xi.mode == EXACT:
        ints, den = _scaled(m)
        out, scale = _banzhaf_from_mobius_ints(ints, n)
        return _unscale(xi, out, den * scale)
    work = m.working_copy()
    levels = popcounts(n)
    work *= np.ldexp(1.0, -levels)
    _backend.superset_sum_inplace(work, n)
    work *= np.ldexp(1.0, levels)
    return SetFunction._wrap(xi.ground, work, FLOAT)


def banzhaf_from_derivatives(xi: SetFunction) -> SetFunction:
    """I_B(A) = 2^-(n-a) * sum over B in the complement of A of Delta_A xi(B)."""
    n = xi.n
    ones = [1] * (n + 1)
    if xi.mode == EXACT:
        ints, den = _scaled(xi)
        out = np.empty(1 << n, dtype=object)
        for A, total in _derivative_table_sums(ints, n, lambda a: ones):
            a = bin(A).count("1")
            out[A] = Fraction(int(total), den << (n - a))
        return SetFunction._wrap(xi.ground, out, EXACT)
    out = np.empty(1 << n, dtype=np.float64)
    for A, total in _derivative_table_sums(xi.working_copy(), n, lambda a: ones):
        out[A] = math.ldexp(float(total), -(n - bin(A).count("1")))
    return SetFunction._wrap(xi.ground, out, FLOAT)


# --- Bernoulli numbers and the inverse interaction -------------------------


@lru_cache(maxsize=None)
def _bernoulli(max_index: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, max_index + 1):
        # sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m
        s = sum((math.comb(m + 1, j) * B[j] for j in range(m)), Fraction(0))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(max_index: int) -> tuple[Fraction, ...]:
    """Bernoulli numbers B_0..B_max_index with the B_1 = -1/2 convention.

    Values are exact :class:`~fractions.Fraction` objects; Python integers
    are unbounded, so no width overflow can occur.
    """
    if max_index < 0:
        raise ValueError(f"max_index must be >= 0, got {max_index}")
    return _bernoulli(int(max_index))


def inverse_interaction(I: SetFunction) -> SetFunction:
    """Moebius coefficients from interaction values.

    m(A) = sum over B superset of A of B_{|B| - |A|} * I(B). The Bernoulli
    index is the size difference ``|B \\ A|``, which is what makes this the
    inverse of :func:`interaction`.
    """
    n = I.n
    B = bernoulli(n)
    if I.mode == EXACT:
        ints, den = _scaled(I)
        L = math.lcm(*(b.denominator for b in B))
        coef = [int(b * L) for b in B]
        out = _level_combine(ints, n, coef)
        return _unscale(I, out, den * L)
    coef = [float(b) for b in B]
    return SetFunction._wrap(I.ground, _level_combine(I.working_copy(), n, coef), FLOAT)
