"""Kernel dispatch: compiled extension when available and safe, pure
Python otherwise.

Set ``FUSIONSEQ_PURE_PYTHON=1`` to force the fallback implementations.
The compiled kernels work on int64, so the wrappers route any input whose
intermediate products could overflow to the arbitrary-precision fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fallback

_native = None
if os.environ.get("FUSIONSEQ_PURE_PYTHON", "") != "1":
    try:
        import importlib

        _native = importlib.import_module(__name__ + "._native")
    except ImportError:
        _native = None

IMPLEMENTATION = "native" if _native is not None else "fallback"

_INT64_BUDGET = 2**62


def _max_abs(arr) -> int:
    a = np.asarray(arr)
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max((abs(int(x)) for x in a.flat), default=0)
    return int(np.abs(a).max())


def _as_i64_3d(arr):
    return np.ascontiguousarray(np.asarray(arr, dtype=np.int64))


def _nested(arr):
    a = np.asarray(arr)
    if a.dtype == object:
        return a.tolist()
    return a.tolist()


def assoc_defect(n):
    """Dispatching wrapper; see ``_fallback.assoc_defect``."""
    r = len(n)
    mx = _max_abs(n)
    if _native is not None and r * mx * mx < _INT64_BUDGET:
        return _native.assoc_defect(_as_i64_3d(n))
    return _fallback.assoc_defect(_nested(n))


def module_assoc_defect(n, a):
    """Dispatching wrapper; see ``_fallback.module_assoc_defect``."""
    r, mr = len(n), (len(a[0]) if len(n) else 0)
    mxn, mxa = _max_abs(n), _max_abs(a)
    bound = max(r * mxn * mxa, mr * mxa * mxa, 1)
    if _native is not None and bound < _INT64_BUDGET:
        return _native.module_assoc_defect(_as_i64_3d(n), _as_i64_3d(a))
    return _fallback.module_assoc_defect(_nested(n), _nested(a))


def hom_defect(nb, nt, f):
    """Dispatching wrapper; see ``_fallback.hom_defect``."""
    rb, rt = len(nb), len(nt)
    mf, mnt, mnb = _max_abs(f), _max_abs(nt), _max_abs(nb)
    bound = max(rt * rt * mf * mf * mnt, rb * mnb * mf, 1)
    if _native is not None and bound < _INT64_BUDGET:
        f64 = np.ascontiguousarray(np.asarray(f, dtype=np.int64))
        return _native.hom_defect(_as_i64_3d(nb), _as_i64_3d(nt), f64)
    return _fallback.hom_defect(_nested(nb), _nested(nt), _nested(f))


def power_iteration(m, v0, max_iter=100000, rtol=1e-15):
    """Dispatching wrapper; see ``_fallback.power_iteration``."""
    if _native is not None:
        m64 = np.ascontiguousarray(np.asarray(m, dtype=np.float64))
        v64 = np.ascontiguousarray(np.asarray(v0, dtype=np.float64))
        return _native.power_iteration(m64, v64, int(max_iter), float(rtol))
    m_list = np.asarray(m, dtype=np.float64).tolist()
    v_list = np.asarray(v0, dtype=np.float64).tolist()
    return _fallback.power_iteration(m_list, v_list, int(max_iter), float(rtol))
