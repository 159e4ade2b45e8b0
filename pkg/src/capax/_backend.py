"""Kernel selection.

The compiled module is used when it imports and ``CAPAX_PURE_PYTHON`` is not
set to ``1``. It only handles float64 and int64 arrays; exact (object dtype)
arrays always go through the numpy fallback.
"""

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("CAPAX_PURE_PYTHON") == "1":
        raise ImportError("compiled kernels disabled by CAPAX_PURE_PYTHON")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_NATIVE = (np.dtype(np.float64), np.dtype(np.int64))


def _pick(values):
    if _ckernels is not None and values.dtype in _NATIVE and values.flags.c_contiguous:
        return _ckernels
    return _pykernels


def zeta_inplace(values, n):
    return _pick(values).zeta_inplace(values, n)


def mobius_inplace(values, n):
    return _pick(values).mobius_inplace(values, n)


def superset_sum_inplace(values, n):
    return _pick(values).superset_sum_inplace(values, n)


def cover_inplace(values, n):
    return _pick(values).cover_inplace(values, n)


def enumerate_vertex_tables(n):
    return (_ckernels or _pykernels).enumerate_vertex_tables(n)


def unpack_tables(tables, n):
    return (_ckernels or _pykernels).unpack_tables(tables, n)
