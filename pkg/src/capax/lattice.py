"""Subset encoding, dense set functions and capacity-level operations.

Element ``i`` of the ground set ``{1, ..., n}`` is bit ``i - 1`` of a mask,
and a set function stores its value at subset ``S`` at index ``mask(S)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _backend

DEFAULT_MAX_N = 24
EXACT = "exact"
FLOAT = "float"
FLOAT_TOLERANCE = 1e-12


class CapaxError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(CapaxError, ValueError):
    pass


class ModeMismatchError(CapaxError, TypeError):
    """Raised when exact and floating set functions meet in one operation."""


def max_ground_size() -> int:
    env = os.environ.get("CAPAX_MAX_N")
    if env is None:
        return DEFAULT_MAX_N
    try:
        return int(env)
    except ValueError:
        raise PreconditionError(f"CAPAX_MAX_N must be an integer, got {env!r}") from None


@dataclass(frozen=True)
class GroundSet:
    """The ground set ``{1, ..., n}``.

    ``n`` is capped at ``max_ground_size()`` (24 unless ``CAPAX_MAX_N`` says
    otherwise) because set functions are stored densely; pass
    ``allow_large=True`` to lift the cap for a single object.
    """

    n: int
    allow_large: bool = False

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise PreconditionError(f"ground size must be an integer, got {self.n!r}")
        if self.n < 1:
            raise PreconditionError(f"ground size must be >= 1, got {self.n}")
        cap = max_ground_size()
        if self.n > cap and not self.allow_large:
            raise PreconditionError(
                f"ground size {self.n} exceeds the dense-storage cap {cap} "
                "(set CAPAX_MAX_N or allow_large=True)"
            )

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def masks(self) -> range:
        return range(1 << self.n)

    def check_mask(self, mask: int) -> int:
        mask = int(mask)
        if mask < 0 or mask >> self.n:
            raise PreconditionError(f"mask {mask:#b} is not a subset of a {self.n}-element ground set")
        return mask


# --- mask helpers ----------------------------------------------------------


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise PreconditionError(f"elements are labelled from 1, got {e}")
        if mask >> (e - 1) & 1:
            raise PreconditionError(f"duplicate element {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def parse_subset(spec: str) -> int:
    """``"1,2,4"`` -> mask; the empty string is the empty set."""
    spec = spec.strip()
    if not spec:
        return 0
    try:
        elements = [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise PreconditionError(f"bad subset spec {spec!r}: expected comma-separated integers") from None
    return mask_of(elements)


def format_subset(mask: int) -> str:
    return ",".join(str(e) for e in elements_of(mask))


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including ``mask`` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def popcounts(n: int) -> np.ndarray:
    # doubling: counts[M | 2^i] = counts[M] + 1 for M < 2^i
    counts = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        counts = np.concatenate([counts, counts + 1])
    return counts


# --- set functions ---------------------------------------------------------


# Fractions are immutable, so small integers share one instance
SMALL_FRACTIONS = {k: Fraction(k) for k in range(-1024, 1025)}


def small_fraction(k: int) -> Fraction:
    f = SMALL_FRACTIONS.get(k)
    return Fraction(k) if f is None else f


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return small_fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise ModeMismatchError(f"float value {x!r} given to an exact set function; use a Fraction or string")
    raise TypeError(f"cannot use {x!r} as an exact scalar")


class SetFunction:
    """A map ``2^N -> scalars`` stored densely by mask.

    ``mode`` is ``"exact"`` (values are :class:`fractions.Fraction`) or
    ``"float"`` (values are float64). The value array is read-only; every
    operation returns a new object.
    """

    __slots__ = ("ground", "_values", "mode")

    def __init__(self, ground: GroundSet | int, values, mode: str = EXACT):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        if mode == EXACT:
            arr = np.empty(ground.size, dtype=object)
            vals = list(values)
            if len(vals) != ground.size:
                raise PreconditionError(f"expected {ground.size} values for n={ground.n}, got {len(vals)}")
            arr[:] = [_to_fraction(v) for v in vals]
        elif mode == FLOAT:
            arr = np.array(values, dtype=np.float64).reshape(-1).copy()
            if arr.shape[0] != ground.size:
                raise PreconditionError(f"expected {ground.size} values for n={ground.n}, got {arr.shape[0]}")
        else:
            raise PreconditionError(f"unknown scalar mode {mode!r}")
        arr.setflags(write=False)
        self.ground = ground
        self._values = arr
        self.mode = mode

    # construction helpers

    @classmethod
    def exact(cls, n: int, values) -> "SetFunction":
        return cls(n, values, EXACT)

    @classmethod
    def floating(cls, n: int, values) -> "SetFunction":
        return cls(n, values, FLOAT)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int], object], mode: str = EXACT) -> "SetFunction":
        ground = n if isinstance(n, GroundSet) else GroundSet(n)
        return cls(ground, [fn(m) for m in ground.masks()], mode)

    @classmethod
    def zeros(cls, n: int, mode: str = EXACT) -> "SetFunction":
        return cls.from_callable(n, lambda m: 0, mode)

    @classmethod
    def _wrap(cls, ground: GroundSet, arr: np.ndarray, mode: str) -> "SetFunction":
        # trusted internal constructor: arr is already of the right dtype
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr)
        if mode == EXACT:
            arr = arr.astype(object, copy=False)
        arr.setflags(write=False)
        obj.ground = ground
        obj._values = arr
        obj.mode = mode
        return obj

    # access

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def values(self) -> np.ndarray:
        return self._values

    def working_copy(self) -> np.ndarray:
        """A private writable copy of the values for in-place kernels."""
        return self._values.copy()

    def __getitem__(self, mask: int):
        return self._values[self.ground.check_mask(mask)]

    def __len__(self) -> int:
        return self.ground.size

    def __iter__(self):
        return iter(self._values)

    def tolist(self) -> list:
        return list(self._values)

    def is_exact(self) -> bool:
        return self.mode == EXACT

    def to_float(self) -> "SetFunction":
        if self.mode == FLOAT:
            return self
        return SetFunction._wrap(self.ground, np.array([float(v) for v in self._values]), FLOAT)

    def to_exact(self) -> "SetFunction":
        if self.mode == EXACT:
            return self
        return SetFunction(self.ground, [Fraction(float(v)) for v in self._values], EXACT)

    def tolerance(self) -> float:
        return 0 if self.mode == EXACT else FLOAT_TOLERANCE

    # arithmetic (linear structure)

    def _check_compatible(self, other: "SetFunction"):
        if not isinstance(other, SetFunction):
            return NotImplemented
        if other.n != self.n:
            raise PreconditionError(f"ground sizes differ: {self.n} vs {other.n}")
        if other.mode != self.mode:
            raise ModeMismatchError(f"cannot combine {self.mode} and {other.mode} set functions")
        return None

    def _scalar(self, c):
        if self.mode == EXACT:
            return _to_fraction(c)
        return float(c)

    def __add__(self, other):
        if self._check_compatible(other) is NotImplemented:
            return NotImplemented
        return SetFunction._wrap(self.ground, self._values + other._values, self.mode)

    def __sub__(self, other):
        if self._check_compatible(other) is NotImplemented:
            return NotImplemented
        return SetFunction._wrap(self.ground, self._values - other._values, self.mode)

    def __neg__(self):
        return SetFunction._wrap(self.ground, -self._values, self.mode)

    def __mul__(self, c):
        if isinstance(c, SetFunction):
            return NotImplemented
        return SetFunction._wrap(self.ground, self._values * self._scalar(c), self.mode)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return (
            self.n == other.n
            and self.mode == other.mode
            and all(a == b for a, b in zip(self._values, other._values))
        )

    def __hash__(self):
        return hash((self.n, self.mode, tuple(self._values)))

    def allclose(self, other: "SetFunction", atol: float = 1e-9) -> bool:
        if other.n != self.n:
            return False
        a = np.array([float(v) for v in self._values])
        b = np.array([float(v) for v in other._values])
        return bool(np.allclose(a, b, rtol=0, atol=atol))

    def __repr__(self):
        shown = ", ".join(str(v) for v in self._values[:8])
        more = ", ..." if self.ground.size > 8 else ""
        return f"SetFunction(n={self.n}, mode={self.mode}, [{shown}{more}])"


def indicator(n: int, predicate: Callable[[int], bool], mode: str = EXACT) -> SetFunction:
    """{0,1}-valued set function equal to 1 where ``predicate(mask)`` holds."""
    return SetFunction.from_callable(n, lambda m: 1 if predicate(m) else 0, mode)


def unanimity(n: int, A: int, mode: str = EXACT) -> SetFunction:
    return indicator(n, lambda m: m & A == A, mode)


# --- capacity checks -------------------------------------------------------


@dataclass(frozen=True)
class CapacityCheckReport:
    is_grounded: bool
    is_monotone: bool
    is_normalized: bool
    witness: Optional[tuple[int, int]] = None

    @property
    def is_capacity(self) -> bool:
        return self.is_grounded and self.is_monotone

    @property
    def is_normalized_capacity(self) -> bool:
        return self.is_grounded and self.is_monotone and self.is_normalized

    def as_dict(self) -> dict:
        return {
            "is_grounded": self.is_grounded,
            "is_monotone": self.is_monotone,
            "is_normalized": self.is_normalized,
            "witness": None if self.witness is None else [format_subset(self.witness[0]), format_subset(self.witness[1])],
        }


def validate_capacity(xi: SetFunction, tolerance=None) -> CapacityCheckReport:
    """Check groundedness, monotonicity and normalization of ``xi``.

    Monotonicity is tested on covering edges ``A -> A + {i}`` only, which is
    equivalent to the all-pairs definition. The reported witness is the
    violating edge with the smallest lower mask, then the lowest added
    element.
    """
    if tolerance is None:
        tolerance = xi.tolerance()
    if tolerance < 0:
        raise PreconditionError("tolerance must be nonnegative")
    v = xi.values
    n = xi.n
    full = xi.ground.full
    witness = None
    if xi.mode == FLOAT:
        idx = np.arange(1 << n)
        best = None
        for i in range(n):
            bit = 1 << i
            lower = idx[(idx & bit) == 0]
            bad = lower[v[lower] > v[lower | bit] + tolerance]
            if bad.size and (best is None or bad[0] < best[0]):
                best = (int(bad[0]), int(bad[0]) | bit)
        witness = best
    else:
        for a in range(1 << n):
            for i in range(n):
                bit = 1 << i
                if not a & bit and v[a] > v[a | bit] + tolerance:
                    witness = (a, a | bit)
                    break
            if witness is not None:
                break
    return CapacityCheckReport(
        is_grounded=abs(v[0]) <= tolerance,
        is_monotone=witness is None,
        is_normalized=abs(v[full] - 1) <= tolerance,
        witness=witness,
    )


def require_capacity(xi: SetFunction, normalized: bool = False) -> None:
    report = validate_capacity(xi)
    ok = report.is_normalized_capacity if normalized else report.is_capacity
    if not ok:
        what = "normalized capacity" if normalized else "capacity"
        raise PreconditionError(f"set function is not a {what}: {report}")


# --- derivatives -----------------------------------------------------------


def _check_disjoint(xi: SetFunction, K: int, A: int):
    xi.ground.check_mask(K)
    xi.ground.check_mask(A)
    if K & A:
        raise PreconditionError(f"derivative needs disjoint sets, got K={format_subset(K)} and A={format_subset(A)}")


def derivative(xi: SetFunction, K: int, A: int):
    """Delta_K xi(A) = sum over L subset of K of (-1)^|K minus L| xi(A + L)."""
    _check_disjoint(xi, K, A)
    v = xi.values
    k = popcount(K)
    total = v[0] * 0
    for L in submasks(K):
        term = v[A | L]
        total = total - term if (k - popcount(L)) & 1 else total + term
    return total


def derivative_recursive(xi: SetFunction, K: int, A: int):
    """Same value as :func:`derivative`, peeling one element of K at a time."""
    _check_disjoint(xi, K, A)
    v = xi.values

    def rec(K, A):
        if K == 0:
            return v[A]
        i = K & -K
        return rec(K ^ i, A | i) - rec(K ^ i, A)

    return rec(K, A)


def mobius_via_derivative(xi: SetFunction, A: int):
    """The Moebius coefficient at A, read off as Delta_A xi(empty set)."""
    return derivative(xi, A, 0)


# --- monotonic cover, permutations, symmetric part -------------------------


def monotonic_cover(xi: SetFunction) -> SetFunction:
    """Smallest capacity dominating ``xi``: cover(A) = max over B subset of A of xi(B)."""
    if xi.values[0] != 0:
        raise PreconditionError("monotonic cover needs xi(empty set) = 0")
    work = xi.working_copy()
    _backend.cover_inplace(work, xi.n)
    return SetFunction._wrap(xi.ground, work, xi.mode)


def _check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise PreconditionError(f"{sigma!r} is not a permutation of 1..{n}")
    return sigma


def permute_mask(mask: int, sigma: Sequence[int]) -> int:
    """Image sigma(B) of a subset; ``sigma[i-1]`` is the image of element ``i``."""
    out = 0
    for i, s in enumerate(sigma):
        if mask >> i & 1:
            out |= 1 << (s - 1)
    return out


def compose(tau: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """tau o sigma, i.e. apply sigma first."""
    return tuple(tau[s - 1] for s in sigma)


def permute(xi: SetFunction, sigma: Sequence[int]) -> SetFunction:
    """sigma(xi)(B) = xi(sigma^{-1}(B)).

    ``sigma`` is given in one-line notation on labels ``1..n``.
    """
    sigma = _check_permutation(sigma, xi.n)
    out = np.empty_like(xi.values)
    for b in xi.ground.masks():
        out[permute_mask(b, sigma)] = xi.values[b]
    return SetFunction._wrap(xi.ground, out, xi.mode)


def symmetric_part(xi: SetFunction) -> SetFunction:
    """Average of xi over all relabelings, computed level by level."""
    n = xi.n
    levels = popcounts(n)
    v = xi.values
    out = np.empty_like(v)
    for k in range(n + 1):
        sel = levels == k
        count = math.comb(n, k)
        if xi.mode == EXACT:
            mean = sum(v[sel], Fraction(0)) / count
        else:
            mean = float(v[sel].sum()) / count
        out[sel] = mean
    return SetFunction._wrap(xi.ground, out, xi.mode)


def is_symmetric(xi: SetFunction, tolerance=None) -> bool:
    if tolerance is None:
        tolerance = xi.tolerance()
    levels = popcounts(xi.n)
    v = xi.values
    for k in range(xi.n + 1):
        level = v[levels == k]
        if any(abs(x - level[0]) > tolerance for x in level):
            return False
    return True
