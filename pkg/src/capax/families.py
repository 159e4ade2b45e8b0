"""k-additivity, subsets of indifference and p-symmetry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .bounds import l_index, l_prime_index
from .lattice import (
    EXACT,
    PreconditionError,
    SetFunction,
    elements_of,
    format_subset,
    indicator,
    parse_subset,
    popcount,
    popcounts,
    require_capacity,
    submasks,
)
from .transforms import mobius

INDIFFERENCE_TOLERANCE = 1e-9
ADDITIVITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Partition:
    """Ordered blocks (masks) that are nonempty, disjoint and cover ``{1..n}``."""

    blocks: tuple[int, ...]
    n: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        seen = 0
        for b in self.blocks:
            if b <= 0:
                raise PreconditionError("partition blocks must be nonempty")
            if b & ~full:
                raise PreconditionError(f"block {format_subset(b)} is outside the ground set")
            if b & seen:
                raise PreconditionError(f"block {format_subset(b)} overlaps an earlier block")
            seen |= b
        if seen != full:
            raise PreconditionError(f"blocks do not cover the ground set (missing {format_subset(full & ~seen)})")

    @classmethod
    def of(cls, blocks: Iterable[int], n: int) -> "Partition":
        return cls(tuple(int(b) for b in blocks), n)

    @classmethod
    def parse(cls, spec: str, n: int) -> "Partition":
        """``"1,2|3|4,5"`` -> blocks {1,2}, {3}, {4,5}."""
        return cls(tuple(parse_subset(part) for part in spec.split("|")), n)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(1 << i for i in range(n)), n)

    def __len__(self):
        return len(self.blocks)

    def canonical(self) -> "Partition":
        return Partition(tuple(sorted(self.blocks, key=lambda b: b & -b)), self.n)

    def format(self) -> str:
        return "|".join(format_subset(b) for b in self.blocks)

    def as_lists(self) -> list[list[int]]:
        return [list(elements_of(b)) for b in self.blocks]


def _close(x, y, mode) -> bool:
    if mode == EXACT:
        return x == y
    return abs(x - y) <= INDIFFERENCE_TOLERANCE


def is_at_most_k_additive(mu: SetFunction, k: int) -> bool:
    """True iff every Moebius coefficient on a set larger than k vanishes."""
    if not 1 <= k <= mu.n:
        raise PreconditionError(f"need 1 <= k <= n, got k={k}, n={mu.n}")
    m = mobius(mu).values
    high = popcounts(mu.n) > k
    if mu.mode == EXACT:
        return all(v == 0 for v in m[high])
    return bool(np.all(np.abs(m[high].astype(float)) <= ADDITIVITY_TOLERANCE))


def minimal_additivity_order(mu: SetFunction) -> int:
    """Smallest k with ``is_at_most_k_additive(mu, k)`` (1 for the zero function)."""
    m = mobius(mu).values
    levels = popcounts(mu.n)
    order = 1
    for mask, v in enumerate(m):
        nonzero = v != 0 if mu.mode == EXACT else abs(v) > ADDITIVITY_TOLERANCE
        if nonzero:
            order = max(order, int(levels[mask]))
    return order


def _indifference_violation(mu: SetFunction, A: int) -> Optional[tuple[int, int, int]]:
    """First (C, B1, B2) with |B1| = |B2|, B1, B2 within A, mu(C+B1) != mu(C+B2)."""
    v = mu.values
    n = mu.n
    rest = ((1 << n) - 1) & ~A
    subs = list(submasks(A))
    for C in submasks(rest):
        first = {}
        for B in subs:
            size = popcount(B)
            if size not in first:
                first[size] = B
            elif not _close(v[C | B], v[C | first[size]], mu.mode):
                return C, first[size], B
    return None


def is_subset_of_indifference(mu: SetFunction, A: int) -> bool:
    """True iff mu(C+B) depends only on |B| for B within A, for every C outside A."""
    if A <= 0:
        raise PreconditionError("a subset of indifference must be nonempty")
    mu.ground.check_mask(A)
    return _indifference_violation(mu, A) is None


def basis(mu: SetFunction) -> Partition:
    """Coarsest partition of N into subsets of indifference.

    Elements i, j are joined when {i, j} is a subset of indifference and the
    connected components of that relation are the candidate blocks. A block
    that fails the full check is split by detaching the element that shows up
    first in the violation (the lowest element where B1 and B2 differ), until
    every block verifies.
    """
    require_capacity(mu)
    n = mu.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) != find(j) and is_subset_of_indifference(mu, (1 << i) | (1 << j)):
                parent[find(j)] = find(i)
    comps: dict[int, int] = {}
    for i in range(n):
        comps[find(i)] = comps.get(find(i), 0) | (1 << i)
    part = Partition(tuple(_verified_blocks(mu, comps.values())), n)
    assert all(is_subset_of_indifference(mu, b) for b in part.blocks)
    return part


def _verified_blocks(mu: SetFunction, candidates: Iterable[int]) -> list[int]:
    """Split candidate blocks until each one is a subset of indifference."""
    pending = sorted(candidates, key=lambda b: b & -b)
    blocks = []
    while pending:
        block = pending.pop(0)
        bad = _indifference_violation(mu, block)
        if bad is None:
            blocks.append(block)
            continue
        _, b1, b2 = bad
        diff = (b1 ^ b2) & block
        element = diff & -diff
        pending.insert(0, block & ~element)
        pending.append(element)
    return sorted(blocks, key=lambda b: b & -b)


def is_p_symmetric_compatible(mu: SetFunction, partition: Partition) -> bool:
    """True iff every block of ``partition`` is a subset of indifference for mu."""
    if not isinstance(partition, Partition):
        raise PreconditionError("expected a Partition")
    if partition.n != mu.n:
        raise PreconditionError(f"partition is over {partition.n} elements, set function over {mu.n}")
    return all(is_subset_of_indifference(mu, b) for b in partition.blocks)


def symmetry_order(mu: SetFunction) -> int:
    """p such that mu is p-symmetric (number of blocks of its basis)."""
    return len(basis(mu))


def _check_nonempty(A: int, n: int) -> int:
    if A <= 0:
        raise PreconditionError("symmetric extremal capacities need a nonempty set A")
    if A >> n:
        raise PreconditionError(f"A={A:#b} is not a subset of a {n}-element ground set")
    return popcount(A)


def symmetric_extremal_upper(A: int, n: int, mode: str = EXACT) -> SetFunction:
    """Symmetric capacity attaining the upper bound at A: 1 iff |B| >= |A| - l(|A|).

    Agrees with ``extremal_upper(A, n)`` on every subset of A.
    """
    a = _check_nonempty(A, n)
    return indicator(n, lambda m: popcount(m) >= a - l_index(a), mode)


def symmetric_extremal_lower(A: int, n: int, mode: str = EXACT) -> SetFunction:
    """Symmetric capacity attaining the lower bound at A: 1 iff |B| >= |A| - lp(|A|).

    For a singleton A this is the capacity equal to 1 on N only.
    """
    a = _check_nonempty(A, n)
    if a == 1:
        full = (1 << n) - 1
        return indicator(n, lambda m: m == full, mode)
    return indicator(n, lambda m: popcount(m) >= a - l_prime_index(a), mode)


def agrees_on_sublattice(mu: SetFunction, nu: SetFunction, A: int) -> bool:
    return all(mu.values[C] == nu.values[C] for C in submasks(A))


__all__ = [
    "Partition",
    "is_at_most_k_additive",
    "minimal_additivity_order",
    "is_subset_of_indifference",
    "basis",
    "is_p_symmetric_compatible",
    "symmetry_order",
    "symmetric_extremal_upper",
    "symmetric_extremal_lower",
    "agrees_on_sublattice",
]
