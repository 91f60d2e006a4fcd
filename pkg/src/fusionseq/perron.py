"""Certified Perron eigenvalue computation for nonnegative rational
matrices.

Strategy: float power iteration produces a candidate eigenvector cheaply;
exact Collatz-Wielandt quotients with that vector then give certified
rational brackets

    min_k (M v)_k / v_k  <=  lambda(M)  <=  max_k (M v)_k / v_k

for any strictly positive v, valid for every nonnegative M (not just
irreducible ones).  Reducible matrices are split into strongly connected
diagonal blocks first, since the bracket only converges on irreducible
blocks; the spectral radius is the max over blocks.  When a bracket pins
the eigenvalue near an integer, the integer is tested exactly: for an
irreducible block, lambda = c iff (M - c I) has a strictly positive
kernel vector, which is decided by exact rational elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

import numpy as np

from . import _kernels
from .errors import PrecisionError
from .linalg import fraction_nullspace, tarjan_scc
from .rational import to_fraction

DEFAULT_TOL = Fraction(1, 10**12)
DEFAULT_MAX_ITER = 10**6


@dataclass(frozen=True)
class PerronResult:
    """Certified bracket for a Perron eigenvalue.

    lo <= lambda <= hi always holds exactly.  eigvec is a strictly
    positive rational vector normalized so its first coordinate is 1; it
    is the approximation used to derive the bracket (assembled per
    irreducible block when the matrix is reducible, in which case it need
    not be a global eigenvector).  exact_integer is set when lambda was
    certified to equal that integer, witnessed by an exact positive
    eigenvector on a dominant irreducible block.
    """

    lo: Fraction
    hi: Fraction
    eigvec: tuple[Fraction, ...]
    exact_integer: int | None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def as_interval(self):
        from .rational import RatInterval

        return RatInterval(self.lo, self.hi)


@dataclass(frozen=True)
class PerronComparison:
    verdict: str  # "strict_less" | "equal" | "undecided"
    a: PerronResult | None
    b: PerronResult | None


def _parse_matrix(m) -> list[list[Fraction]]:
    if isinstance(m, np.ndarray):
        m = m.tolist()
    rows = [[to_fraction(x) for x in row] for row in m]
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
        for x in row:
            if x < 0:
                raise ValueError("matrix must be nonnegative")
    return rows


def _cw_bounds(m, v) -> tuple[Fraction, Fraction]:
    """Collatz-Wielandt bracket from a strictly positive rational v."""
    n = len(m)
    lo = hi = None
    for i in range(n):
        acc = Fraction(0)
        row = m[i]
        for j in range(n):
            if row[j]:
                acc += row[j] * v[j]
        ratio = acc / v[i]
        if lo is None or ratio < lo:
            lo = ratio
        if hi is None or ratio > hi:
            hi = ratio
    return lo, hi


def _positive_kernel_vector(m, c) -> tuple[Fraction, ...] | None:
    """Strictly positive kernel vector of (m - c I), normalized so the
    first coordinate is 1, or None.  For irreducible nonnegative m this
    decides lambda(m) == c definitively either way."""
    n = len(m)
    shifted = [
        [m[i][j] - (c if i == j else 0) for j in range(n)] for i in range(n)
    ]
    basis = fraction_nullspace(shifted)
    if len(basis) != 1:
        return None
    vec = basis[0]
    first = next((x for x in vec if x != 0), None)
    if first is None:
        return None
    if first < 0:
        vec = [-x for x in vec]
    if any(x <= 0 for x in vec):
        return None
    scale = vec[0]
    return tuple(x / scale for x in vec)


def _reconstruct_kernel_vector(m, c, approx) -> tuple[Fraction, ...] | None:
    """Cheap exact certificate: rationalize a float eigenvector guess with
    small denominators and verify (m - cI) v = 0 exactly."""
    if approx is None or approx[0] <= 0:
        return None
    ref = approx[0]
    try:
        cand = [Fraction(x / ref).limit_denominator(10**7) for x in approx]
    except (OverflowError, ZeroDivisionError, ValueError):
        return None
    if any(x <= 0 for x in cand):
        return None
    n = len(m)
    for i in range(n):
        acc = Fraction(0)
        for j in range(n):
            if m[i][j]:
                acc += m[i][j] * cand[j]
        if acc != c * cand[i]:
            return None
    return tuple(cand)


@dataclass
class _BlockResult:
    lo: Fraction
    hi: Fraction
    vec: tuple[Fraction, ...]
    exact: Fraction | None  # exact eigenvalue when certified


def _float_stage(m, max_iter):
    """Float power iteration on (m + I); returns a positive float vector
    or None when floats cannot represent the entries."""
    n = len(m)
    try:
        arr = np.array([[float(x) for x in row] for row in m], dtype=np.float64)
    except OverflowError:
        return None
    if not np.all(np.isfinite(arr)):
        return None
    shifted = arr + np.eye(n)
    budget = min(max_iter, 200 * n + 2000)
    v, _ = _kernels.power_iteration(shifted, [1.0] * n, budget, 1e-16)
    return v


def _rationalize_positive(v, n) -> list[Fraction]:
    if v is None:
        return [Fraction(1)] * n
    out = []
    floor_pos = Fraction(1, 2**80)
    for x in v:
        f = Fraction(x) if x > 0 else floor_pos
        out.append(max(f, floor_pos))
    return out


def _block_perron(m, tol, max_iter) -> _BlockResult:
    """Certified bracket for one irreducible block (or a 1x1 block)."""
    n = len(m)
    if n == 1:
        lam = m[0][0]
        return _BlockResult(lam, lam, (Fraction(1),), lam)

    approx = _float_stage(m, max_iter)
    v = _rationalize_positive(approx, n)
    lo, hi = _cw_bounds(m, v)
    best_vec = v
    tested: set[Fraction] = set()

    def try_integers() -> _BlockResult | None:
        for c in range(ceil(lo), floor(hi) + 1):
            c = Fraction(c)
            if c in tested:
                continue
            tested.add(c)
            vec = _reconstruct_kernel_vector(m, c, approx)
            if vec is None:
                vec = _positive_kernel_vector(m, c)
            if vec is not None:
                return _BlockResult(c, c, vec, c)
        return None

    if hi - lo < Fraction(1, 2):
        res = try_integers()
        if res is not None:
            return res

    denom = 1 << 64
    iters = 0
    while hi - lo > tol:
        if iters >= max_iter:
            raise PrecisionError(
                f"Perron bracket stalled at width {float(hi - lo):.3e} "
                f"after {iters} refinement steps"
            )
        prev_width = hi - lo
        w = []
        for i in range(n):
            acc = v[i]  # the +I part of (m + I) v
            row = m[i]
            for j in range(n):
                if row[j]:
                    acc += row[j] * v[j]
            w.append(acc)
        total = sum(w)
        v = []
        for x in w:
            r = round(x * denom / total)
            v.append(Fraction(r, denom) if r > 0 else Fraction(1, denom))
        new_lo, new_hi = _cw_bounds(m, v)
        if new_lo > lo:
            lo = new_lo
        if new_hi < hi:
            hi = new_hi
            best_vec = v
        if hi - lo < Fraction(1, 2):
            res = try_integers()
            if res is not None:
                return res
        if prev_width > 0 and (hi - lo) > prev_width * Fraction(9, 10):
            denom <<= 64
        iters += 1
    return _BlockResult(lo, hi, tuple(best_vec), None)


def _refine_block(m, result, target_hi, tol, max_iter) -> _BlockResult:
    """Refine a block bracket until it is resolved against target_hi:
    either hi < target, lo > target, or exact equality certified."""
    t = tol
    while True:
        if result.exact is not None:
            return result
        if result.hi < target_hi or result.lo > target_hi:
            return result
        vec = _positive_kernel_vector(m, target_hi)
        if vec is not None:
            return _BlockResult(target_hi, target_hi, vec, target_hi)
        # target_hi is definitively not this block's eigenvalue; shrink
        # the bracket until it moves off the target.
        t = t / 16
        if t < Fraction(1, 10**60):
            raise PrecisionError(
                "could not separate block eigenvalue from integer candidate"
            )
        result = _block_perron(m, t, max_iter)


def perron_eigen(m, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> PerronResult:
    """Certified Perron eigenvalue of a nonnegative rational matrix.

    Returns a PerronResult whose [lo, hi] bracket has width <= tol and is
    guaranteed to contain the spectral radius.  The zero matrix yields
    lambda = 0 with exact_integer = 0.
    """
    tol = to_fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = _parse_matrix(m)
    n = len(m)

    adj = [[j for j in range(n) if m[i][j] != 0] for i in range(n)]
    comps = tarjan_scc(adj)

    blocks: list[tuple[list[int], list[list[Fraction]], _BlockResult]] = []
    for comp in comps:
        comp = sorted(comp)
        sub = [[m[i][j] for j in comp] for i in comp]
        blocks.append((comp, sub, _block_perron(sub, tol, max_iter)))

    lam_lo = max(b.lo for _, _, b in blocks)
    lam_hi = max(b.hi for _, _, b in blocks)

    exact_integer = None
    exact_value = None
    if lam_hi - lam_lo < 1 or lam_lo == lam_hi:
        candidates = sorted(
            {Fraction(c) for c in range(ceil(lam_lo), floor(lam_hi) + 1)},
            reverse=True,
        )
        for cand in candidates:
            witnessed = False
            consistent = True
            refined = []
            for comp, sub, res in blocks:
                if res.exact is not None:
                    if res.exact == cand:
                        witnessed = True
                    elif res.exact > cand:
                        consistent = False
                    refined.append((comp, sub, res))
                    continue
                if res.hi < cand:
                    refined.append((comp, sub, res))
                    continue
                try:
                    res2 = _refine_block(sub, res, cand, tol, max_iter)
                except PrecisionError:
                    consistent = False
                    refined.append((comp, sub, res))
                    continue
                if res2.exact == cand:
                    witnessed = True
                elif res2.lo > cand:
                    consistent = False
                refined.append((comp, sub, res2))
            blocks = refined
            lam_lo = max(b.lo for _, _, b in blocks)
            lam_hi = max(b.hi for _, _, b in blocks)
            if witnessed and consistent and lam_hi <= cand:
                exact_value = cand
                exact_integer = int(cand)
                lam_lo = lam_hi = cand
                break

    vec = [Fraction(1)] * n
    for comp, _, res in blocks:
        for pos, idx in enumerate(comp):
            vec[idx] = res.vec[pos]
    scale = vec[0]
    vec = tuple(x / scale for x in vec)

    if exact_value is None and lam_hi - lam_lo > tol:
        raise PrecisionError("combined Perron bracket exceeds tolerance")
    return PerronResult(lo=lam_lo, hi=lam_hi, eigvec=vec, exact_integer=exact_integer)


def perron_compare(
    a, b, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> PerronComparison:
    """Certify lambda(b) < lambda(a) for 0 <= b <= a with a strictly
    positive, refining both brackets until they separate.

    Returns verdict "equal" when b == a entrywise, "strict_less" once the
    brackets separate, and "undecided" only when the refinement budget is
    exhausted (which cannot happen for exact inputs satisfying the
    preconditions, by the strict monotonicity of the spectral radius in
    a positive matrix).
    """
    a = _parse_matrix(a)
    b = _parse_matrix(b)
    if len(a) != len(b):
        raise ValueError("matrices must have equal shape")
    for i in range(len(a)):
        for j in range(len(a)):
            if a[i][j] <= 0:
                raise ValueError("first matrix must be strictly positive")
            if b[i][j] > a[i][j]:
                raise ValueError("second matrix must be <= first entrywise")
    if a == b:
        return PerronComparison("equal", None, None)

    tol = to_fraction(tol)
    for _ in range(64):
        ra = perron_eigen(a, tol, max_iter)
        rb = perron_eigen(b, tol, max_iter)
        if rb.hi < ra.lo:
            return PerronComparison("strict_less", ra, rb)
        if rb.exact_integer is not None and ra.exact_integer is not None:
            if rb.exact_integer < ra.exact_integer:
                return PerronComparison("strict_less", ra, rb)
            break
        tol = tol / 8
    return PerronComparison("undecided", ra, rb)
