"""Exact bounds of the Moebius coefficients of normalized capacities.

For ``|A| = a >= 2`` every normalized capacity satisfies
``-C(a-1, lp(a)) <= m(A) <= C(a-1, l(a))`` with ``l(a) = 2*floor(a/4)`` and
``lp(a) = 2*floor((a-1)/4) + 1``; both ends are attained by threshold
capacities that count ``|B & A|``. The same numbers bound the interaction and
Banzhaf transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .lattice import EXACT, PreconditionError, SetFunction, indicator, popcount, unanimity

__all__ = [
    "BoundSpec",
    "l_index",
    "l_prime_index",
    "bound_spec",
    "binomial",
    "extremal_upper",
    "extremal_lower",
    "symmetric_vertex",
    "symmetric_vertex_mobius_at_n",
    "alternating_binomial_sum",
    "bound_table",
    "VertexRow",
    "vertex_mobius_matrix",
    "asymptotic_estimate",
]


def binomial(n: int, k: int) -> int:
    """Exact C(n, k) by the multiplicative formula; 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    c = 1
    for i in range(1, k + 1):
        c = c * (n - k + i) // i
    return c


def l_index(a: int) -> int:
    return 2 * (a // 4)


def l_prime_index(a: int) -> int:
    return 2 * ((a - 1) // 4) + 1


@dataclass(frozen=True)
class BoundSpec:
    a: int
    l_index: int
    l_prime_index: int
    upper: int
    lower: int

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "l": self.l_index,
            "l_prime": self.l_prime_index,
            "upper": self.upper,
            "lower": self.lower,
        }


def bound_spec(a: int, n: int) -> BoundSpec:
    """Tight range of m(A) over normalized capacities on n elements, |A| = a."""
    if not 1 <= a <= n:
        raise PreconditionError(f"need 1 <= a <= n, got a={a}, n={n}")
    l, lp = l_index(a), l_prime_index(a)
    if a == 1:
        # singleton: m({i}) = mu({i}) in [0, 1], forced to 1 when N = {i}
        upper, lower = 1, 1 if n == 1 else 0
    else:
        upper, lower = binomial(a - 1, l), -binomial(a - 1, lp)
    return BoundSpec(a=a, l_index=l, l_prime_index=lp, upper=upper, lower=lower)


def _threshold_on(A: int, n: int, threshold: int, mode: str) -> SetFunction:
    return indicator(n, lambda m: popcount(m & A) >= threshold, mode)


def _check_target(A: int, n: int) -> int:
    full = (1 << n) - 1
    if A <= 0:
        raise PreconditionError("extremal capacities need a nonempty set A")
    if A & ~full:
        raise PreconditionError(f"A={A:#b} is not a subset of a {n}-element ground set")
    return popcount(A)


def extremal_upper(A: int, n: int, mode: str = EXACT) -> SetFunction:
    """mu*_A: 1 iff |B & A| >= |A| - l(|A|); attains the upper bound at A."""
    a = _check_target(A, n)
    return _threshold_on(A, n, a - l_index(a), mode)


def extremal_lower(A: int, n: int, mode: str = EXACT) -> SetFunction:
    """mu_A*: 1 iff |B & A| >= |A| - lp(|A|); attains the lower bound at A.

    For a singleton A the threshold would make mu(empty set) = 1. The lower
    bound 0 is then attained by the unanimity game of the lowest element
    outside A, which is additive; for n = 1 the unanimity game on A.
    """
    a = _check_target(A, n)
    if a == 1:
        rest = ((1 << n) - 1) & ~A
        return unanimity(n, rest & -rest if rest else A, mode)
    return _threshold_on(A, n, a - l_prime_index(a), mode)


def symmetric_vertex(k: int, n: int, mode: str = EXACT) -> SetFunction:
    """mu_k(B) = 1 iff |B| >= n - k, for 0 <= k <= n - 1."""
    if not 0 <= k <= n - 1:
        raise PreconditionError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    return indicator(n, lambda m: popcount(m) >= n - k, mode)


def symmetric_vertex_mobius_at_n(k: int, n: int) -> int:
    """m^{mu_k}(N) = (-1)^k C(n-1, k)."""
    if not 0 <= k <= n - 1:
        raise PreconditionError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    return (-1) ** k * binomial(n - 1, k)


def alternating_binomial_sum(n: int, k: int) -> int:
    """sum_{l=0}^{k} (-1)^l C(n, l), checked against the closed form (-1)^k C(n-1, k)."""
    if not 0 <= k < n:
        raise PreconditionError(f"need 0 <= k < n, got n={n}, k={k}")
    total = sum((-1) ** l * binomial(n, l) for l in range(k + 1))
    closed = (-1) ** k * binomial(n - 1, k)
    if total != closed:
        raise ArithmeticError(f"alternating binomial identity failed at n={n}, k={k}: {total} != {closed}")
    return total


def bound_table(max_a: int) -> list[tuple[int, int, int]]:
    """Rows (a, upper, lower) for a = 1..max_a.

    Every row uses a ground set strictly larger than ``a``, so the singleton
    row reads (1, 1, 0).
    """
    if max_a < 1:
        raise PreconditionError(f"max_a must be >= 1, got {max_a}")
    rows = []
    for a in range(1, max_a + 1):
        b = bound_spec(a, max(a + 1, max_a))
        rows.append((a, b.upper, b.lower))
    return rows


@dataclass(frozen=True)
class VertexRow:
    n: int
    values: tuple[int, ...]
    max_k: int
    min_k: Optional[int]


def _argmax_set(vals: list[int], ks) -> set[int]:
    best = max(vals[k] for k in ks)
    return {k for k in ks if vals[k] == best}


def vertex_mobius_matrix(max_n: int) -> list[VertexRow]:
    """Rows n = 1..max_n of (-1)^k C(n-1, k), k = 0..n-1, with extremal markers.

    The max marker is l(n) and the min marker lp(n) (absent for n = 1, which
    has no odd column). Each marker is checked to lie in the true arg-max /
    arg-min set; ties are resolved in favour of the marker.
    """
    if max_n < 1:
        raise PreconditionError(f"max_n must be >= 1, got {max_n}")
    rows = []
    for n in range(1, max_n + 1):
        vals = [symmetric_vertex_mobius_at_n(k, n) for k in range(n)]
        max_k = l_index(n)
        if max_k not in _argmax_set(vals, range(n)):
            raise ArithmeticError(f"max marker {max_k} not an argmax in row n={n}")
        min_k = None
        if n >= 2:
            min_k = l_prime_index(n)
            if min_k not in _argmax_set([-v for v in vals], range(n)):
                raise ArithmeticError(f"min marker {min_k} not an argmin in row n={n}")
        rows.append(VertexRow(n=n, values=tuple(vals), max_k=max_k, min_k=min_k))
    return rows


def asymptotic_estimate(n: int) -> float:
    """4^(n/2) / sqrt(pi n / 2), evaluated in log space."""
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    log_value = n * math.log(2) - 0.5 * math.log(math.pi * n / 2)
    return math.exp(log_value)
