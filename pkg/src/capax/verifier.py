"""Brute-force checks over the vertices of the normalized-capacity polytope.

The vertices are the {0,1}-valued monotone normalized capacities. For
``n <= 6`` each fits in a 64-bit truth table, so enumeration and the
per-vertex transforms run over integer matrices in chunks; the per-chunk
(max, min, witness) triples are merged with an associative fold.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import _backend
from .bounds import bound_spec, extremal_lower, extremal_upper
from .lattice import (
    EXACT,
    FLOAT,
    PreconditionError,
    SetFunction,
    derivative,
    format_subset,
    popcount,
    popcounts,
    submasks,
)
from .transforms import (
    _banzhaf_from_mobius_ints,
    _interaction_from_mobius_ints,
    bernoulli,
)

VERTEX_CAP = 6
ORACLE_CAP = 12
CHUNK = 1 << 14
TRANSFORMS = ("mobius", "interaction", "banzhaf")


class CapExceeded(PreconditionError):
    pass


def _check_vertex_n(n: int, cap: int = VERTEX_CAP):
    if not 1 <= n <= cap:
        raise CapExceeded(f"vertex enumeration supports 1 <= n <= {cap}, got n={n}")


# --- enumeration -----------------------------------------------------------


@dataclass
class VertexEnumeration:
    """All {0,1}-valued monotone normalized capacities on ``n`` elements.

    ``tables[i]`` is a truth table: bit ``M`` is the value at mask ``M``.
    Iterating yields exact :class:`SetFunction` objects one at a time.
    """

    n: int
    tables: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.tables.shape[0])

    def __len__(self):
        return self.count

    def __iter__(self) -> Iterator[SetFunction]:
        for t in self.tables:
            yield table_to_set_function(int(t), self.n)

    def chunks(self, size: int = CHUNK) -> Iterator[tuple[int, np.ndarray]]:
        """(offset, int64 value matrix) pairs covering the stream in order."""
        for start in range(0, self.count, size):
            yield start, _backend.unpack_tables(self.tables[start : start + size], self.n)


def table_to_set_function(table: int, n: int, mode: str = EXACT) -> SetFunction:
    return SetFunction.from_callable(n, lambda m: table >> m & 1, mode)


def set_function_to_table(mu: SetFunction) -> int:
    t = 0
    for m, v in enumerate(mu.values):
        if v not in (0, 1):
            raise PreconditionError("only {0,1}-valued set functions have truth tables")
        if v == 1:
            t |= 1 << m
    return t


def enumerate_vertices(n: int) -> VertexEnumeration:
    """Depth-first enumeration over masks in (popcount, value) order.

    A mask is forced to 1 when an immediate subset is already 1; otherwise
    0 is explored before 1, except at N where only 1 is allowed.
    """
    _check_vertex_n(n)
    return VertexEnumeration(n=n, tables=_backend.enumerate_vertex_tables(n))


def count_monotone_boolean_functions(n: int) -> int:
    """Dedekind number M(n), computed without the vertex enumerator.

    Monotone functions on n+1 variables are pairs f0 <= f1 of monotone
    functions on n variables (restrictions to x_{n+1} = 0 and 1); the base
    case lists all 2^(2^n) functions for n <= 2 and keeps the monotone ones.
    """
    if n < 0 or n > VERTEX_CAP:
        raise CapExceeded(f"Dedekind counter supports 0 <= n <= {VERTEX_CAP}")
    return len(_monotone_tables(n)) if n <= 5 else _count_pairs(_monotone_tables(5))


def _monotone_tables(n: int) -> np.ndarray:
    if n <= 2:
        size = 1 << n
        out = []
        for t in range(1 << size):
            if all(
                not (t >> a & 1) or (t >> b & 1)
                for a in range(size)
                for b in range(size)
                if a & b == a
            ):
                out.append(t)
        return np.array(out, dtype=np.uint64)
    lower = _monotone_tables(n - 1)
    shift = np.uint64(1 << (n - 1))
    f0 = lower[:, None]
    f1 = lower[None, :]
    ok = (f0 & ~f1) == 0
    i, j = np.nonzero(ok)
    return lower[i] | (lower[j] << shift)


def _count_pairs(tables: np.ndarray) -> int:
    total = 0
    for start in range(0, len(tables), 512):
        block = tables[start : start + 512, None]
        total += int(np.count_nonzero((block & ~tables[None, :]) == 0))
    return total


# --- per-vertex transforms -------------------------------------------------


def _transform_rows(rows: np.ndarray, n: int, transform: str) -> tuple[np.ndarray, int]:
    """Integer-scaled transform of each row; returns (values * scale, scale)."""
    m = np.ascontiguousarray(rows, dtype=np.int64)
    _backend.mobius_inplace(m, n)
    if transform == "mobius":
        return m, 1
    if transform == "interaction":
        return _interaction_from_mobius_ints(m, n)
    if transform == "banzhaf":
        return _banzhaf_from_mobius_ints(m, n)
    raise PreconditionError(f"unknown transform {transform!r}; expected one of {TRANSFORMS}")


@dataclass
class ExtremeReport:
    transform: str
    A: int
    n: int
    max_value: Fraction
    min_value: Fraction
    max_witness: SetFunction = field(repr=False)
    min_witness: SetFunction = field(repr=False)
    vertex_count: int = 0

    def expected(self):
        return bound_spec(popcount(self.A), self.n)

    def matches_bounds(self) -> bool:
        b = self.expected()
        return self.max_value == b.upper and self.min_value == b.lower

    def as_dict(self) -> dict:
        b = self.expected()
        return {
            "transform": self.transform,
            "set": format_subset(self.A),
            "n": self.n,
            "max": str(self.max_value),
            "min": str(self.min_value),
            "expected_upper": b.upper,
            "expected_lower": b.lower,
            "ok": self.matches_bounds(),
            "vertices": self.vertex_count,
        }


def _fold(acc, part):
    # acc/part: (max values, argmax ids, min values, argmin ids) per column;
    # ties keep the earlier vertex
    if acc is None:
        return part
    amax, aimax, amin, aimin = acc
    pmax, pimax, pmin, pimin = part
    take_max = pmax > amax
    take_min = pmin < amin
    return (
        np.where(take_max, pmax, amax),
        np.where(take_max, pimax, aimax),
        np.where(take_min, pmin, amin),
        np.where(take_min, pimin, aimin),
    )


def extremize_all(transform: str, n: int, vertices: Optional[VertexEnumeration] = None) -> dict[int, ExtremeReport]:
    """Exact max/min of ``transform`` at every nonempty A over all vertices."""
    _check_vertex_n(n)
    if vertices is None:
        vertices = enumerate_vertices(n)
    acc = None
    scale = 1
    for offset, rows in vertices.chunks():
        vals, scale = _transform_rows(rows, n, transform)
        imax = vals.argmax(axis=0)
        imin = vals.argmin(axis=0)
        cols = np.arange(vals.shape[1])
        acc = _fold(acc, (vals[imax, cols], imax + offset, vals[imin, cols], imin + offset))
    vmax, imax, vmin, imin = acc
    reports = {}
    for A in range(1, 1 << n):
        reports[A] = ExtremeReport(
            transform=transform,
            A=A,
            n=n,
            max_value=Fraction(int(vmax[A]), scale),
            min_value=Fraction(int(vmin[A]), scale),
            max_witness=table_to_set_function(int(vertices.tables[imax[A]]), n),
            min_witness=table_to_set_function(int(vertices.tables[imin[A]]), n),
            vertex_count=vertices.count,
        )
    return reports


def extremize(transform: str, A: int, n: int) -> ExtremeReport:
    """Exact max/min of ``transform`` at A over all vertices, with witnesses."""
    _check_vertex_n(n)
    if A <= 0 or A >> n:
        raise PreconditionError(f"A must be a nonempty subset of a {n}-element ground set")
    return extremize_all(transform, n)[A]


def argmax_tables(transform: str, A: int, n: int, lowest: bool = False) -> set[int]:
    """Truth tables of every vertex attaining the max (or min) at A."""
    vertices = enumerate_vertices(n)
    best = None
    hits: set[int] = set()
    for offset, rows in vertices.chunks():
        vals, _ = _transform_rows(rows, n, transform)
        col = -vals[:, A] if lowest else vals[:, A]
        top = col.max()
        if best is None or top > best:
            best, hits = top, set()
        if top == best:
            hits.update(int(t) for t in vertices.tables[offset + np.nonzero(col == top)[0]])
    return hits


# --- derivative maxima ---------------------------------------------------


def derivative_maxima(A: int, n: int, vertices: Optional[VertexEnumeration] = None) -> dict[int, int]:
    """For each B outside A, the vertex maximum of Delta_A mu(B)."""
    _check_vertex_n(n)
    if vertices is None:
        vertices = enumerate_vertices(n)
    full = (1 << n) - 1
    a = popcount(A)
    terms = [(L, (a - popcount(L)) & 1) for L in submasks(A)]
    best: dict[int, int] = {}
    for _, rows in vertices.chunks():
        for B in submasks(full & ~A):
            d = np.zeros(rows.shape[0], dtype=np.int64)
            for L, odd in terms:
                if odd:
                    d -= rows[:, B | L]
                else:
                    d += rows[:, B | L]
            top = int(d.max())
            best[B] = max(best.get(B, top), top)
    return best


def verify_derivative_maxima(A: int, n: int) -> bool:
    """Max of Delta_A mu(B) equals max of m(A) for every B outside A, attained by mu*_A."""
    _check_vertex_n(n, cap=5)
    if A <= 0 or A >> n:
        raise PreconditionError(f"A must be a nonempty subset of a {n}-element ground set")
    vertices = enumerate_vertices(n)
    target = extremize_all("mobius", n, vertices)[A].max_value
    witness = extremal_upper(A, n)
    for B, value in derivative_maxima(A, n, vertices).items():
        if value != target or derivative(witness, A, B) != target:
            return False
    return True


# --- naive oracles ---------------------------------------------------------


def _zero(mode):
    return 0 if mode == EXACT else 0.0


def _coef(w, mode):
    return w if mode == EXACT else float(w)


def _naive_mobius(v, n, mode):
    out = []
    for A in range(1 << n):
        a = popcount(A)
        s = _zero(mode)
        for B in submasks(A):
            s += -v[B] if (a - popcount(B)) & 1 else v[B]
        out.append(s)
    return out


def _naive_zeta(v, n, mode):
    return [sum((v[B] for B in submasks(A)), _zero(mode)) for A in range(1 << n)]


def _delta(v, A, B):
    a = popcount(A)
    s = 0
    for L in submasks(A):
        s += -v[B | L] if (a - popcount(L)) & 1 else v[B | L]
    return s


def _naive_interaction(v, n, mode):
    f = math.factorial
    full = (1 << n) - 1
    out = []
    for A in range(1 << n):
        a = popcount(A)
        s = _zero(mode)
        for B in submasks(full & ~A):
            b = popcount(B)
            s += _coef(Fraction(f(n - b - a) * f(b), f(n - a + 1)), mode) * _delta(v, A, B)
        out.append(s)
    return out


def _naive_interaction_mobius(v, n, mode):
    m = _naive_mobius(v, n, mode)
    full = (1 << n) - 1
    out = []
    for A in range(1 << n):
        s = _zero(mode)
        for S in submasks(full & ~A):
            s += _coef(Fraction(1, popcount(S) + 1), mode) * m[A | S]
        out.append(s)
    return out


def _naive_banzhaf(v, n, mode):
    full = (1 << n) - 1
    out = []
    for A in range(1 << n):
        s = _zero(mode)
        for B in submasks(full & ~A):
            s += _delta(v, A, B)
        out.append(s * _coef(Fraction(1, 1 << (n - popcount(A))), mode))
    return out


def _naive_inverse_interaction(v, n, mode):
    bern = bernoulli(n)
    full = (1 << n) - 1
    out = []
    for A in range(1 << n):
        s = _zero(mode)
        for S in submasks(full & ~A):
            s += _coef(bern[popcount(S)], mode) * v[A | S]
        out.append(s)
    return out


_ORACLES = {
    "mobius": _naive_mobius,
    "zeta": _naive_zeta,
    "interaction": _naive_interaction,
    "interaction-mobius": _naive_interaction_mobius,
    "banzhaf": _naive_banzhaf,
    "inverse-interaction": _naive_inverse_interaction,
}


def naive_transform_oracle(transform: str, xi: SetFunction) -> SetFunction:
    """Literal double/triple-loop evaluation of a transform's defining sum.

    ``"interaction"`` uses the weighted-derivative formula and
    ``"interaction-mobius"`` the Moebius-weighted one. Exact inputs are
    evaluated on integer numerators over a common denominator.
    """
    if xi.n > ORACLE_CAP:
        raise CapExceeded(f"naive oracles support n <= {ORACLE_CAP}, got n={xi.n}")
    try:
        oracle = _ORACLES[transform]
    except KeyError:
        raise PreconditionError(f"unknown transform {transform!r}; expected one of {sorted(_ORACLES)}") from None
    n = xi.n
    if xi.mode == EXACT:
        den = math.lcm(*(v.denominator for v in xi.values))
        ints = [int(v * den) for v in xi.values]
        # the derivative sums stay in integers; weights carry the Fractions
        raw = oracle(ints, n, EXACT)
        return SetFunction(xi.ground, [Fraction(x) / den for x in raw], EXACT)
    return SetFunction(xi.ground, oracle(list(map(float, xi.values)), n, FLOAT), FLOAT)


def slow_checks_enabled() -> bool:
    return os.environ.get("CAPAX_SLOW_TESTS") == "1"
