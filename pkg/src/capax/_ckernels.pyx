# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels.

Same contract as ``capax._pykernels``; arrays must be C-contiguous with the
last axis of length ``2**n`` and dtype float64 or int64.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

ctypedef fused scalar_t:
    double
    int64_t


# blocked loops: for each bit, rows split into (low, high) halves of width
# ``bit``; no per-mask branches so the inner loop vectorizes


cdef void _zeta(scalar_t[:, ::1] v, int n, int sign) noexcept nogil:
    cdef Py_ssize_t rows = v.shape[0], size = v.shape[1]
    cdef Py_ssize_t r, base, j, bit
    cdef scalar_t *row
    cdef int i
    for r in range(rows):
        row = &v[r, 0]
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            base = 0
            while base < size:
                if sign > 0:
                    for j in range(base, base + bit):
                        row[j + bit] += row[j]
                else:
                    for j in range(base, base + bit):
                        row[j + bit] -= row[j]
                base += 2 * bit


cdef void _superset(scalar_t[:, ::1] v, int n) noexcept nogil:
    cdef Py_ssize_t rows = v.shape[0], size = v.shape[1]
    cdef Py_ssize_t r, base, j, bit
    cdef scalar_t *row
    cdef int i
    for r in range(rows):
        row = &v[r, 0]
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            base = 0
            while base < size:
                for j in range(base, base + bit):
                    row[j] += row[j + bit]
                base += 2 * bit


cdef void _cover(scalar_t[:, ::1] v, int n) noexcept nogil:
    cdef Py_ssize_t rows = v.shape[0], size = v.shape[1]
    cdef Py_ssize_t r, base, j, bit
    cdef scalar_t *row
    cdef scalar_t lo, hi
    cdef int i
    for r in range(rows):
        row = &v[r, 0]
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            base = 0
            while base < size:
                for j in range(base, base + bit):
                    lo = row[j]
                    hi = row[j + bit]
                    row[j + bit] = lo if lo > hi else hi
                base += 2 * bit


def _as_rows(values, n):
    if values.shape[values.ndim - 1] != (1 << n):
        raise ValueError("last axis must have length 2**n")
    return values.reshape(-1, 1 << n)


cdef void _run(object rows, int n, int op):
    cdef double[:, ::1] f
    cdef int64_t[:, ::1] k
    if rows.dtype == np.float64:
        f = rows
        with nogil:
            if op == 0:
                _zeta(f, n, 1)
            elif op == 1:
                _zeta(f, n, -1)
            elif op == 2:
                _superset(f, n)
            else:
                _cover(f, n)
    else:
        k = rows
        with nogil:
            if op == 0:
                _zeta(k, n, 1)
            elif op == 1:
                _zeta(k, n, -1)
            elif op == 2:
                _superset(k, n)
            else:
                _cover(k, n)


def zeta_inplace(values, int n):
    _run(_as_rows(values, n), n, 0)
    return values


def mobius_inplace(values, int n):
    _run(_as_rows(values, n), n, 1)
    return values


def superset_sum_inplace(values, int n):
    _run(_as_rows(values, n), n, 2)
    return values


def cover_inplace(values, int n):
    _run(_as_rows(values, n), n, 3)
    return values


cdef struct Walk:
    int last
    int full
    int order[64]
    uint64_t subs[64]
    uint64_t *out
    Py_ssize_t count


cdef void _walk(Walk *w, int pos, uint64_t table) noexcept nogil:
    cdef int m
    while pos < w.last:
        m = w.order[pos]
        if table & w.subs[m]:
            table |= (<uint64_t>1) << m
        elif m == w.full:
            table |= (<uint64_t>1) << m
        else:
            _walk(w, pos + 1, table)
            table |= (<uint64_t>1) << m
        pos += 1
    if w.out != NULL:
        w.out[w.count] = table
    w.count += 1


def enumerate_vertex_tables(int n):
    if not 1 <= n <= 6:
        raise ValueError(f"truth tables hold at most 64 masks; got n={n}")
    cdef Walk w
    cdef int m, i, k = 0
    cdef uint64_t t
    w.full = (1 << n) - 1
    order = sorted(range(1, w.full + 1), key=lambda x: (bin(x).count("1"), x))
    for m in order:
        w.order[k] = m
        k += 1
    w.last = k
    for m in range(1 << n):
        t = 0
        for i in range(n):
            if m >> i & 1:
                t |= (<uint64_t>1) << (m ^ (1 << i))
        w.subs[m] = t
    w.out = NULL
    w.count = 0
    with nogil:
        _walk(&w, 0, 0)
    result = np.empty(w.count, dtype=np.uint64)
    cdef uint64_t[::1] buf = result
    if w.count:
        w.out = &buf[0]
        w.count = 0
        with nogil:
            _walk(&w, 0, 0)
    return result


def unpack_tables(tables, int n):
    cdef uint64_t[::1] t = np.ascontiguousarray(tables, dtype=np.uint64)
    cdef Py_ssize_t rows = t.shape[0], size = 1 << n, r, m
    result = np.empty((rows, size), dtype=np.int64)
    cdef int64_t[:, ::1] out = result
    with nogil:
        for r in range(rows):
            for m in range(size):
                out[r, m] = <int64_t>((t[r] >> m) & 1)
    return result
