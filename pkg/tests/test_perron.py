"""Certified Perron eigenvalue brackets and strict comparisons."""

import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionseq.errors import InvalidDataError
from fusionseq.perron import perron_compare, perron_eigen


def _bisect_root(poly, lo: Fraction, hi: Fraction,
                 steps: int = 150) -> tuple[Fraction, Fraction]:
    """Frozen oracle: bisection bracket for the unique root of poly in
    [lo, hi] with poly(lo) < 0 < poly(hi)."""
    assert poly(lo) < 0 < poly(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if poly(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def test_golden_ratio_bracket():
    """lambda([[0,1],[1,1]]) is the golden ratio, the positive root of
    x^2 - x - 1."""
    tol = Fraction(1, 10**12)
    result = perron_eigen([[0, 1], [1, 1]], tol=tol)
    phi_lo, phi_hi = _bisect_root(lambda x: x * x - x - 1,
                                  Fraction(1), Fraction(2))
    assert result.hi - result.lo <= tol
    assert result.lo <= phi_hi and phi_lo <= result.hi
    assert result.exact_integer is None


@pytest.mark.parametrize("m,expected", [
    ([[0]], 0),
    ([[5]], 5),
    ([[0, 1], [1, 0]], 1),
    ([[2, 0], [0, 3]], 3),
    ([[1, 1], [1, 1]], 2),
    ([[0, 1, 0], [0, 0, 1], [1, 0, 0]], 1),
])
def test_integer_eigenvalues_certified_exactly(m, expected):
    result = perron_eigen(m)
    assert result.exact_integer == expected
    assert result.lo == result.hi == expected


def test_zero_matrix():
    result = perron_eigen([[0, 0], [0, 0]])
    assert result.exact_integer == 0


def test_reducible_matrix_takes_block_maximum():
    # blocks {0} and {1,2}; the second block is a shifted fibonacci
    m = [[1, 0, 0], [0, 1, 1], [0, 1, 0]]
    result = perron_eigen(m)
    phi_lo, _ = _bisect_root(lambda x: x * x - x - 1,
                             Fraction(1), Fraction(2))
    assert result.lo > Fraction(3, 2)
    assert result.lo <= phi_lo + Fraction(1, 10**9)


def test_rational_entries():
    result = perron_eigen([[Fraction(1, 2), Fraction(1, 2)],
                           [Fraction(1, 2), Fraction(1, 2)]])
    assert result.lo == result.hi == 1


def test_negative_entries_rejected():
    with pytest.raises((ValueError, InvalidDataError)):
        perron_eigen([[1, -1], [0, 1]])


def test_bracket_width_obeys_tolerance():
    for exp in (6, 10, 14):
        tol = Fraction(1, 10**exp)
        result = perron_eigen([[0, 1], [1, 1]], tol=tol)
        assert result.hi - result.lo <= tol


@given(st.integers(2, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(0, 9), min_size=n, max_size=n),
        min_size=n, max_size=n)))
@settings(max_examples=80, deadline=None)
def test_bracket_contains_float_spectral_radius(rows):
    """The certified bracket must agree with numpy's float eigenvalues
    up to float roundoff."""
    result = perron_eigen(rows, tol=Fraction(1, 10**10))
    rho = max(abs(np.linalg.eigvals(np.array(rows, dtype=float))))
    assert float(result.lo) - 1e-6 <= rho <= float(result.hi) + 1e-6


def test_compare_strict_inequality():
    a = [[2, 1], [1, 2]]
    b = [[2, 1], [1, 1]]
    comparison = perron_compare(a, b)
    assert comparison.verdict == "strict_less"
    assert comparison.b.hi < comparison.a.lo


def test_compare_equal_matrices():
    a = [[1, 2], [3, 4]]
    assert perron_compare(a, a).verdict == "equal"


def test_compare_requires_entrywise_order():
    with pytest.raises((ValueError, InvalidDataError)):
        perron_compare([[1, 0], [0, 1]], [[0, 2], [0, 0]])


def test_500_random_strict_pairs_under_budget():
    """Decrementing one entry of a positive matrix strictly lowers the
    Perron root; 500 randomized certificates."""
    rng = np.random.default_rng(20260814)
    start = time.perf_counter()
    for _ in range(500):
        n = int(rng.integers(2, 7))
        a = rng.integers(1, 6, size=(n, n))
        i, j = rng.integers(0, n, size=2)
        b = a.copy()
        b[i][j] -= 1
        comparison = perron_compare(a.tolist(), b.tolist())
        assert comparison.verdict == "strict_less"
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"500 comparisons took {elapsed:.2f}s"
