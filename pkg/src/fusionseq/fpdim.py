"""Certified Frobenius-Perron dimensions of fusion rings.

FPdim(x_i) is the Perron eigenvalue of the left multiplication matrix of
x_i.  The dimension vector d is simultaneously a left eigenvector of
every left multiplication matrix (d^T L_i = d_i d^T), which gives a cheap
exact certificate: reconstruct d with small denominators from one float
Perron iteration of the total multiplication matrix, then verify the
eigenvector identities exactly.  A strictly positive vector v with
v^T L = c v^T pins the spectral radius of L to exactly c by the
Collatz-Wielandt bracket, irreducible or not.  Rings with irrational
dimensions fall back to per-object certified brackets.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import InvalidDataError, PrecisionError
from .perron import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    PerronResult,
    perron_eigen,
    _rationalize_positive,
)
from .rational import RatInterval, interval_dot, to_fraction
from .rings import FusionRing

_vector_cache: dict[tuple[str, Fraction], tuple[PerronResult, ...]] = {}


def _require_fusion(ring: FusionRing, what: str):
    if ring.is_multifusion and len(ring.unit_components) > 1:
        raise InvalidDataError(
            f"{what} is defined here only for fusion rings (single unit "
            "basis element); this ring has unit components "
            f"{ring.unit_components}"
        )


def _float_right_vector(l_matrix, n):
    arr = np.asarray(l_matrix, dtype=np.float64) + np.eye(n)
    v, _ = _kernels.power_iteration(arr, [1.0] * n, 200 * n + 2000, 1e-16)
    return v


def _exact_dims_attempt(ring: FusionRing) -> list[Fraction] | None:
    """Try to certify the whole dimension vector exactly via the left
    eigenvector identity.  Returns the exact dims or None."""
    r = ring.rank
    unit = ring.unit
    total = np.asarray(ring.total_left_mult(), dtype=np.float64)
    # d is the positive right eigenvector of the transpose of the total
    # left multiplication matrix.
    v, _ = _kernels.power_iteration(total.T, [1.0] * r, 200 * r + 2000, 1e-16)
    if v[unit] <= 0:
        return None
    try:
        d = [Fraction(x / v[unit]).limit_denominator(10**7) for x in v]
    except (ValueError, OverflowError, ZeroDivisionError):
        return None
    if any(x <= 0 for x in d) or d[unit] != 1:
        return None
    n = ring.N
    for i in range(r):
        di = d[i]
        ni = n[i]
        for j in range(r):
            acc = Fraction(0)
            row = ni[j]
            for k in range(r):
                if row[k]:
                    acc += d[k] * int(row[k])
            if acc != di * d[j]:
                return None
    return d


def fpdim_vector(
    ring: FusionRing, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> tuple[PerronResult, ...]:
    """Certified FPdim of every basis element.  Cached per ring and
    tolerance."""
    _require_fusion(ring, "fpdim_vector")
    tol = to_fraction(tol)
    key = (ring.digest, tol)
    hit = _vector_cache.get(key)
    if hit is not None:
        return hit

    results: list[PerronResult] = []
    exact = _exact_dims_attempt(ring)
    if exact is not None:
        for i in range(ring.rank):
            li = ring.basis_left_mult(i)
            vec = tuple(
                _rationalize_positive(
                    _float_right_vector(li, ring.rank), ring.rank
                )
            )
            vec = tuple(x / vec[0] for x in vec)
            d = exact[i]
            results.append(
                PerronResult(
                    lo=d,
                    hi=d,
                    eigvec=vec,
                    exact_integer=int(d) if d.denominator == 1 else None,
                )
            )
    else:
        for i in range(ring.rank):
            li = ring.basis_left_mult(i)
            results.append(perron_eigen(li.tolist(), tol, max_iter))

    for i, res in enumerate(results):
        if res.lo < 1 - tol:
            raise InvalidDataError(
                f"FPdim of basis element {i} certified below 1 "
                f"({float(res.lo)}); input is not a valid fusion ring"
            )

    out = tuple(results)
    if len(_vector_cache) > 512:
        _vector_cache.clear()
    _vector_cache[key] = out
    return out


def fpdim_object(
    ring: FusionRing, i: int, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> PerronResult:
    """Certified FPdim of basis element i (Perron eigenvalue of its left
    multiplication matrix); the bracket is always >= 1 for valid rings."""
    if not 0 <= i < ring.rank:
        raise ValueError(f"basis index {i} out of range")
    return fpdim_vector(ring, tol, max_iter)[i]


def dims_intervals(ring: FusionRing, tol=DEFAULT_TOL) -> list[RatInterval]:
    return [r.as_interval() for r in fpdim_vector(ring, tol)]


def _cartan_rows(ring: FusionRing):
    if ring.cartan is None:
        return None
    return ring.cartan


def fpdim_category(
    ring: FusionRing, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> PerronResult:
    """Certified FPdim of the whole ring: d^T C d with C the Cartan
    matrix (identity when absent).  Exact when all object dimensions are
    exact."""
    _require_fusion(ring, "fpdim_category")
    tol = to_fraction(tol)
    t = tol
    for _ in range(10):
        dims = dims_intervals(ring, t)
        cartan = _cartan_rows(ring)
        if cartan is None:
            total = RatInterval.point(0)
            for d in dims:
                total = total + d * d
        else:
            total = RatInterval.point(0)
            for i in range(ring.rank):
                row = cartan[i]
                for j in range(ring.rank):
                    if int(row[j]):
                        total = total + dims[i] * dims[j] * int(row[j])
        if total.width <= tol:
            vec = fpdim_vector(ring, t)
            approx = tuple(r.as_interval().mid for r in vec)
            approx = tuple(x / approx[0] for x in approx)
            exact_int = None
            if total.is_point() and total.lo.denominator == 1:
                exact_int = int(total.lo)
            return PerronResult(
                lo=total.lo, hi=total.hi, eigvec=approx, exact_integer=exact_int
            )
        shrink = total.width / tol
        t = t / (4 * shrink)
    raise PrecisionError("could not shrink category FPdim to tolerance")


def regular_object(ring: FusionRing, tol=DEFAULT_TOL) -> list[RatInterval]:
    """Interval coefficients of the regular element: coefficient of x_j
    is sum_i FPdim(x_i) * cartan[i][j] (cartan = identity when absent)."""
    _require_fusion(ring, "regular_object")
    dims = dims_intervals(ring, tol)
    cartan = _cartan_rows(ring)
    if cartan is None:
        return dims
    out = []
    for j in range(ring.rank):
        acc = RatInterval.point(0)
        for i in range(ring.rank):
            c = int(cartan[i][j])
            if c:
                acc = acc + dims[i] * c
        out.append(acc)
    return out


def regular_eigen_property(ring: FusionRing, tol=DEFAULT_TOL) -> bool:
    """Interval check of x_i * R = FPdim(x_i) * R for every basis
    element: the interval evaluations of both sides must intersect
    componentwise (they both contain the true value)."""
    dims = dims_intervals(ring, tol)
    reg = regular_object(ring, tol)
    n = ring.N
    r = ring.rank
    for i in range(r):
        d_i = dims[i]
        # (L_i reg)_k = sum_j N[i][j][k] reg_j
        for k in range(r):
            acc = RatInterval.point(0)
            for j in range(r):
                c = int(n[i][j][k])
                if c:
                    acc = acc + reg[j] * c
            rhs = d_i * reg[k]
            if not acc.intersects(rhs):
                return False
    return True
