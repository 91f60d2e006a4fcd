"""Certified Frobenius-Perron dimensions of rings."""

import time
from fractions import Fraction

import pytest

from fusionseq import fpdim
from fusionseq.errors import InvalidDataError
from fusionseq.fpdim import (
    dims_intervals,
    fpdim_category,
    fpdim_object,
    regular_eigen_property,
    regular_object,
)
from fusionseq.modules import end_ring, regular_module
from fusionseq.rings import fibonacci_ring

TOL = Fraction(1, 10**12)


def _bisect_root(poly, lo: Fraction, hi: Fraction,
                 steps: int = 150) -> tuple[Fraction, Fraction]:
    assert poly(lo) < 0 < poly(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def test_reps3_dims_exact(rings):
    dims = dims_intervals(rings["reps3"], TOL)
    assert [(iv.lo, iv.hi) for iv in dims] == [
        (1, 1), (1, 1), (2, 2)]
    cat = fpdim_category(rings["reps3"], TOL)
    assert cat.lo == cat.hi == 6


def test_repq8_category_exact(rings):
    cat = fpdim_category(rings["repq8"], TOL)
    assert cat.lo == cat.hi == 8


@pytest.mark.parametrize("name,order", [
    ("vecz2", 2), ("vecz3", 3), ("vecs3", 6)])
def test_vec_rings_category_is_group_order(rings, name, order):
    cat = fpdim_category(rings[name], TOL)
    assert cat.lo == cat.hi == order


def test_fib_tau_dimension_is_golden_ratio():
    phi_lo, phi_hi = _bisect_root(lambda x: x * x - x - 1,
                                  Fraction(1), Fraction(2))
    iv = fpdim_object(fibonacci_ring(), 1, TOL)
    assert iv.width <= TOL
    assert iv.lo <= phi_hi and phi_lo <= iv.hi


def test_fib_category_dimension():
    """FPdim of the fibonacci ring is 1 + phi^2 = (5 + sqrt 5)/2, the
    larger root of x^2 - 5x + 5."""
    lo, hi = _bisect_root(lambda x: x * x - 5 * x + 5,
                          Fraction(3), Fraction(4))
    cat = fpdim_category(fibonacci_ring(), TOL)
    assert cat.width <= TOL
    assert cat.lo <= hi and lo <= cat.hi
    # both endpoints truncate to the documented 10-place decimal
    assert int(cat.lo * 10**10) == 36180339887 == int(cat.hi * 10**10)


def test_dims_at_least_one(rings):
    for name, ring in rings.items():
        for iv in dims_intervals(ring, TOL):
            assert iv.hi >= 1, name


def test_unit_dimension_is_exactly_one(rings):
    for name, ring in rings.items():
        iv = dims_intervals(ring, TOL)[ring.unit]
        assert (iv.lo, iv.hi) == (1, 1), name


def test_category_dim_at_least_rank_sum_property(rings):
    # sum of d_i^2 >= rank, with equality iff all dims are 1
    for name, ring in rings.items():
        cat = fpdim_category(ring, TOL)
        assert cat.hi >= ring.rank - TOL, name


def test_regular_object_eigen_property(rings):
    tol = Fraction(1, 10**10)
    for name, ring in rings.items():
        assert regular_eigen_property(ring, tol), name


def test_regular_object_unit_component():
    reg = regular_object(fibonacci_ring(), TOL)
    assert reg[0].contains(Fraction(1))


def test_multifusion_rejected():
    e = end_ring(regular_module(fibonacci_ring()))
    with pytest.raises(InvalidDataError):
        fpdim_category(e, TOL)


def test_dims_cached_by_digest():
    fpdim._vector_cache.clear()
    ring = fibonacci_ring()
    dims_intervals(ring, TOL)
    assert len(fpdim._vector_cache) == 1
    dims_intervals(fibonacci_ring(), TOL)
    assert len(fpdim._vector_cache) == 1


def test_per_ring_runtime_under_100ms(rings):
    for name, ring in rings.items():
        fpdim._vector_cache.clear()
        start = time.perf_counter()
        dims_intervals(ring, TOL)
        fpdim_category(ring, TOL)
        elapsed = time.perf_counter() - start
        assert elapsed < 0.1, f"{name}: {elapsed * 1000:.1f} ms"
