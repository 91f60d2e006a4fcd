"""Native/fallback kernel equivalence and overflow routing."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionseq import _kernels
from fusionseq._kernels import _fallback


def small_tensor(rank_max=4, entry_max=3):
    return st.integers(1, rank_max).flatmap(
        lambda r: st.lists(
            st.lists(st.lists(st.integers(0, entry_max),
                              min_size=r, max_size=r),
                     min_size=r, max_size=r),
            min_size=r, max_size=r))


@given(small_tensor())
@settings(max_examples=60)
def test_assoc_defect_implementations_agree(n):
    via_dispatch = _kernels.assoc_defect(np.array(n, dtype=np.int64))
    via_fallback = _fallback.assoc_defect(n)
    assert via_dispatch == via_fallback


@given(small_tensor(rank_max=3), st.integers(1, 3))
@settings(max_examples=60)
def test_module_assoc_defect_implementations_agree(n, mr):
    r = len(n)
    rng = np.random.default_rng(r * 31 + mr)
    a = rng.integers(0, 3, size=(r, mr, mr))
    via_dispatch = _kernels.module_assoc_defect(
        np.array(n, dtype=np.int64), a)
    via_fallback = _fallback.module_assoc_defect(n, a.tolist())
    assert via_dispatch == via_fallback


@given(small_tensor(rank_max=3), small_tensor(rank_max=3))
@settings(max_examples=40)
def test_hom_defect_implementations_agree(nb, nt):
    rb, rt = len(nb), len(nt)
    rng = np.random.default_rng(rb * 7 + rt)
    f = rng.integers(0, 2, size=(rt, rb))
    via_dispatch = _kernels.hom_defect(
        np.array(nb, dtype=np.int64), np.array(nt, dtype=np.int64), f)
    via_fallback = _fallback.hom_defect(nb, nt, f.tolist())
    assert via_dispatch == via_fallback


# x1*x1 = x0 but x1*x0 = 0 while x0*x1 = x1: (x1 x1) x1 = x1 yet
# x1 (x1 x1) = 0
_NONASSOC = [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]


def test_assoc_defect_none_iff_associative():
    # Z/2 group ring: associative
    n = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    assert _kernels.assoc_defect(np.array(n, dtype=np.int64)) is None
    defect = _kernels.assoc_defect(np.array(_NONASSOC, dtype=np.int64))
    assert defect is not None
    i, j, k, l, lhs, rhs = defect
    assert lhs != rhs


def test_overflow_routes_to_exact_fallback():
    """Entries big enough that intermediate products exceed int64 must
    still give exact results (the dispatcher bypasses the compiled
    path)."""
    big = 2**40
    scaled = [[[x * big for x in row] for row in plane]
              for plane in _NONASSOC]
    n = np.array(scaled, dtype=object)
    defect = _kernels.assoc_defect(n)
    reference = _fallback.assoc_defect(scaled)
    assert defect == reference
    # the violation values are products of two big entries: they must be
    # exact integers beyond int64, not wrapped values
    assert defect is not None
    assert max(abs(defect[4]), abs(defect[5])) > 2**63


def test_power_iteration_agrees_with_fallback():
    m = np.array([[1.0, 1.0], [1.0, 0.0]])
    v0 = np.array([1.0, 1.0])
    v_disp, _ = _kernels.power_iteration(m, v0, 10000, 1e-14)
    v_fb, _ = _fallback.power_iteration(m.tolist(), v0.tolist(), 10000, 1e-14)
    assert np.allclose(np.asarray(v_disp, dtype=float),
                       np.asarray(v_fb, dtype=float), rtol=1e-9)


def test_pure_python_env_forces_fallback():
    code = ("import fusionseq._kernels as k; print(k.IMPLEMENTATION)")
    env = dict(os.environ, FUSIONSEQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "fallback"


@pytest.mark.skipif(_kernels.IMPLEMENTATION != "native",
                    reason="compiled kernels not built")
def test_native_is_active_by_default():
    assert _kernels.IMPLEMENTATION == "native"
