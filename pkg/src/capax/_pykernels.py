"""Fallback lattice kernels written against numpy only.

Every function operates in place on the last axis of a C-contiguous array of
length ``2**n`` (a single set function, or a batch of them stacked as rows).
The same signatures are provided by the compiled ``_ckernels`` module.
"""

import numpy as np

__all__ = [
    "zeta_inplace",
    "mobius_inplace",
    "superset_sum_inplace",
    "cover_inplace",
    "enumerate_vertex_tables",
    "unpack_tables",
]


def _pairs(values, n, i):
    step = 1 << i
    return values.reshape(values.shape[:-1] + ((1 << n) // (2 * step), 2, step))


def zeta_inplace(values, n):
    """values[M] <- sum of values[S] over S subset of M."""
    for i in range(n):
        v = _pairs(values, n, i)
        v[..., 1, :] += v[..., 0, :]
    return values


def mobius_inplace(values, n):
    for i in range(n):
        v = _pairs(values, n, i)
        v[..., 1, :] -= v[..., 0, :]
    return values


def superset_sum_inplace(values, n):
    """values[M] <- sum of values[S] over S superset of M."""
    for i in range(n):
        v = _pairs(values, n, i)
        v[..., 0, :] += v[..., 1, :]
    return values


def cover_inplace(values, n):
    for i in range(n):
        v = _pairs(values, n, i)
        v[..., 1, :] = np.maximum(v[..., 1, :], v[..., 0, :])
    return values


def _immediate_subset_tables(n):
    subs = [0] * (1 << n)
    for m in range(1 << n):
        t = 0
        for i in range(n):
            if m >> i & 1:
                t |= 1 << (m ^ (1 << i))
        subs[m] = t
    return subs


def enumerate_vertex_tables(n):
    """All monotone {0,1} normalized capacities on n elements as truth tables.

    Bit ``M`` of each returned ``uint64`` holds the value at mask ``M``.
    Masks are assigned in (popcount, value) order; a mask with an immediate
    subset already at 1 is forced to 1, otherwise 0 is tried before 1.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"truth tables hold at most 64 masks; got n={n}")
    full = (1 << n) - 1
    order = sorted(range(1, full + 1), key=lambda m: (bin(m).count("1"), m))
    subs = _immediate_subset_tables(n)
    out = []
    last = len(order)

    def walk(pos, table):
        if pos == last:
            out.append(table)
            return
        m = order[pos]
        if table & subs[m]:
            walk(pos + 1, table | (1 << m))
            return
        if m != full:
            walk(pos + 1, table)
        walk(pos + 1, table | (1 << m))

    walk(0, 0)
    return np.array(out, dtype=np.uint64)


def unpack_tables(tables, n):
    """Expand truth tables into an ``int64`` matrix of shape (len, 2**n)."""
    tables = np.asarray(tables, dtype=np.uint64)
    shifts = np.arange(1 << n, dtype=np.uint64)
    return ((tables[:, None] >> shifts) & np.uint64(1)).astype(np.int64)
