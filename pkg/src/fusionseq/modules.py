"""Based modules over fusion rings: module categories at the level of
Grothendieck groups.

A based module is a nonnegative integer action tensor a[i][j][k]: the
multiplicity of basis vector M_k in x_i . M_j.  The axioms mirror the
ring axioms: associativity over the ring action, the unit acting as the
identity, and the duality adjunction a[i][j][k] = a[i*][k][j].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import InvalidDataError, PrecisionError
from .fpdim import dims_intervals, fpdim_category, fpdim_vector
from .linalg import fraction_nullspace, interval_ge_solve
from .perron import DEFAULT_TOL
from .rational import RatInterval, interval_dot, sqrt_interval, to_fraction
from .rings import FusionRing, _as_structure_array, opposite_ring, trivial_ring, validate_ring
from .validation import ValidationReport

_MAX_VIOLATIONS = 25


class BasedModule:
    """Immutable based module over a fusion ring."""

    def __init__(self, ring: FusionRing, a, labels=None):
        self.ring = ring
        self.a = _as_structure_array(a, "action constants")
        if self.a.ndim != 3 or self.a.shape[1] != self.a.shape[2]:
            raise ValueError(f"action must be rank x mrank x mrank, got {self.a.shape}")
        if self.a.shape[0] != ring.rank:
            raise ValueError("action first axis must match ring rank")
        self.mrank = int(self.a.shape[1])
        self.labels = None if labels is None else tuple(str(x) for x in labels)
        if self.labels is not None and len(self.labels) != self.mrank:
            raise ValueError("labels length must equal mrank")

    def label(self, j: int) -> str:
        if self.labels is not None:
            return self.labels[j]
        return f"m{j}"

    @property
    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(self.ring.digest.encode())
        h.update(repr(self.a.tolist()).encode())
        return h.hexdigest()

    def __eq__(self, other):
        return isinstance(other, BasedModule) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"<based module of rank {self.mrank} over {self.ring!r}>"


def validate_module(m: BasedModule, check_ring: bool = True) -> ValidationReport:
    """Check the based-module axioms; ring axioms are folded in (as
    ring:* codes) unless check_ring is False.

    Codes: negative-entry, unit-action, module-associativity, adjunction,
    plus nested ring:* codes.
    """
    rep = ValidationReport("module")
    if check_ring:
        ring_rep = validate_ring(m.ring)
        for v in ring_rep.violations:
            rep.add(f"ring:{v.code}", v.where, v.message)
        if not rep.ok:
            return rep

    a = m.a
    for idx in zip(*np.nonzero(np.asarray(a, dtype=object) < 0)):
        if len(rep.violations) >= _MAX_VIOLATIONS:
            break
        rep.add("negative-entry", tuple(int(x) for x in idx), "a < 0")
    if not rep.ok:
        return rep

    uc = m.ring.unit_components
    for j in range(m.mrank):
        for k in range(m.mrank):
            coeff = sum(int(a[c][j][k]) for c in uc)
            want = 1 if j == k else 0
            if coeff != want:
                rep.add("unit-action", (j, k),
                        f"unit acts with coefficient {coeff} at ({j},{k})")
                if len(rep.violations) >= _MAX_VIOLATIONS:
                    return rep

    dual = m.ring.dual
    for i in range(m.ring.rank):
        ai = a[i]
        ad = a[dual[i]]
        for j in range(m.mrank):
            for k in range(m.mrank):
                if int(ai[j][k]) != int(ad[k][j]):
                    rep.add("adjunction", (i, j, k),
                            "a[i][j][k] != a[i*][k][j]")
                    if len(rep.violations) >= _MAX_VIOLATIONS:
                        return rep

    defect = _kernels.module_assoc_defect(m.ring.N, a)
    if defect is not None:
        i, j, p, q, lhs, rhs = defect
        rep.add(
            "module-associativity", (i, j, p, q),
            f"(x{i} x{j}).m{p} and x{i}.(x{j}.m{p}) differ at m{q}: "
            f"{lhs} != {rhs}",
        )
    return rep


def support_components(m: BasedModule) -> list[list[int]]:
    """Connected components of the undirected support graph on module
    basis vectors (edge j-k whenever some a[i][j][k] > 0)."""
    adj = [set() for _ in range(m.mrank)]
    nz = np.nonzero(np.asarray(m.a, dtype=object) != 0)
    for j, k in zip(nz[1], nz[2]):
        adj[int(j)].add(int(k))
        adj[int(k)].add(int(j))
    seen = [False] * m.mrank
    comps = []
    for start in range(m.mrank):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_indecomposable(m: BasedModule) -> bool:
    return len(support_components(m)) == 1


@dataclass(frozen=True)
class ModuleFPData:
    """Certified module dimensions.

    dims[j] encloses FPdim(M_j); scale is the normalization multiplier
    applied to the eigenvector that was computed with its reference
    coordinate set to 1.  Normalization: sum_j dims[j]^2 = FPdim(ring)
    (semisimple convention).
    """

    dims: tuple[RatInterval, ...]
    scale: RatInterval


def _total_action_matrix(m: BasedModule):
    """T[j][k] = sum_i a[i][j][k]; the module dims vector is its positive
    right Perron eigenvector, with eigenvalue sum_i FPdim(x_i)."""
    return np.asarray(m.a, dtype=object).sum(axis=0)


def _exact_eigvec(t_matrix, value: Fraction, n: int):
    shifted = [
        [Fraction(int(t_matrix[i][j])) - (value if i == j else 0)
         for j in range(n)]
        for i in range(n)
    ]
    basis = fraction_nullspace(shifted)
    if len(basis) != 1:
        return None
    vec = basis[0]
    first = next((x for x in vec if x != 0), None)
    if first is None or any((x <= 0) != (first <= 0) for x in vec if x != 0):
        return None
    if first < 0:
        vec = [-x for x in vec]
    if any(x <= 0 for x in vec):
        return None
    return [x / vec[0] for x in vec]


def _interval_eigvec(t_matrix, lam: RatInterval, n: int):
    """Certified enclosure of the Perron eigenvector of an irreducible
    integer matrix, normalized with coordinate 0 equal to 1: solve
    (T - lam I) u = 0 with u_0 = 1 by interval elimination on the
    subsystem that drops row 0 and column 0."""
    if n == 1:
        return [RatInterval.point(1)]
    a_sub = []
    b_sub = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            base = Fraction(int(t_matrix[i][j]))
            if i == j:
                row.append(RatInterval(base - lam.hi, base - lam.lo))
            else:
                row.append(RatInterval.point(base))
        a_sub.append(row)
        b_sub.append(RatInterval.point(-Fraction(int(t_matrix[i][0]))))
    sol = interval_ge_solve(a_sub, b_sub)
    if sol is None:
        return None
    out = [RatInterval.point(1)] + sol
    if any(iv.lo <= 0 for iv in out):
        return None
    return out


def module_fpdims(
    m: BasedModule, tol=DEFAULT_TOL, max_refine: int = 12
) -> ModuleFPData:
    """Certified FPdims of the module basis vectors.

    Requires a valid indecomposable module over a semisimple fusion ring.
    The dims vector is the positive Perron eigenvector of the total
    action matrix, scaled so sum_j dims[j]^2 = FPdim(ring).
    """
    tol = to_fraction(tol)
    if not m.ring.is_semisimple():
        raise InvalidDataError(
            "module dimensions implemented for semisimple rings only"
        )
    if not is_indecomposable(m):
        raise InvalidDataError("module is decomposable; dims not unique")

    n = m.mrank
    t_matrix = _total_action_matrix(m)

    t = tol
    for _ in range(max_refine):
        obj_dims = fpdim_vector(m.ring, t)
        lam_lo = sum(r.lo for r in obj_dims)
        lam_hi = sum(r.hi for r in obj_dims)
        raw = None
        if lam_lo == lam_hi:
            raw_exact = _exact_eigvec(t_matrix, lam_lo, n)
            if raw_exact is not None:
                raw = [RatInterval.point(x) for x in raw_exact]
        if raw is None:
            raw = _interval_eigvec(t_matrix, RatInterval(lam_lo, lam_hi), n)
        if raw is not None:
            cat = fpdim_category(m.ring, t)
            cat_iv = RatInterval(cat.lo, cat.hi)
            norm2 = interval_dot(raw, raw)
            scale = sqrt_interval(cat_iv / norm2, tol / 4)
            dims = [scale * x for x in raw]
            if max(d.width for d in dims) <= tol:
                return ModuleFPData(dims=tuple(dims), scale=scale)
        t = t / 64
    raise PrecisionError("module dims did not reach tolerance")


def dual_module(m: BasedModule) -> BasedModule:
    """Dual module over the opposite ring: a'[i][j][k] = a[i*][j][k].
    Applying it twice returns the original module."""
    dual = m.ring.dual
    a = np.asarray(m.a, dtype=object)
    a_dual = np.stack([a[dual[i]] for i in range(m.ring.rank)])
    return BasedModule(opposite_ring(m.ring), a_dual, labels=m.labels)


def end_ring(m: BasedModule) -> FusionRing:
    """Matrix-unit multifusion ring of module endofunctors: basis E_jk at
    index j*mrank + k, products E_jk E_lm = delta_kl E_jm, duals
    E_jk -> E_kj, unit components the diagonal E_jj.  For mrank 1 this
    collapses to the trivial fusion ring."""
    mr = m.mrank
    if mr == 1:
        return trivial_ring()
    r = mr * mr
    n = np.zeros((r, r, r), dtype=np.int64)
    for j in range(mr):
        for k in range(mr):
            for l in range(mr):
                # E_jk * E_kl = E_jl
                n[j * mr + k][k * mr + l][j * mr + l] = 1
    dual = [k * mr + j for j in range(mr) for k in range(mr)]
    comps = [j * mr + j for j in range(mr)]
    labels = [f"E{j}{k}" for j in range(mr) for k in range(mr)]
    return FusionRing(n, dual=dual, unit_components=comps, labels=labels)


def action_functor_matrix(m: BasedModule) -> np.ndarray:
    """Matrix of the action functor into the endofunctor ring: column i
    expands the action of x_i in matrix units, with coefficient of E_kj
    equal to a[i][j][k] (row index k*mrank + j)."""
    mr = m.mrank
    r = m.ring.rank
    out = np.zeros((mr * mr, r), dtype=np.int64)
    for i in range(r):
        for j in range(mr):
            for k in range(mr):
                out[k * mr + j][i] = int(m.a[i][j][k])
    return out


def gr_surjective_action(m: BasedModule) -> bool:
    """True when every matrix unit appears in the image of the action:
    all row sums of the action functor matrix are positive.  Holds for
    every valid indecomposable module."""
    af = action_functor_matrix(m)
    return bool(np.all(af.sum(axis=1) > 0))


def regular_module(ring: FusionRing) -> BasedModule:
    """The ring acting on itself: a = N."""
    return BasedModule(ring, ring.N, labels=ring.labels)


def one_object_module(ring: FusionRing, dims, labels=None) -> BasedModule:
    """Module with a single basis vector; x_i acts by the integer
    dims[i].  Valid exactly when dims is a one-dimensional character of
    the ring (multiplicative, unit 1, dual-symmetric)."""
    dims = [int(d) for d in dims]
    if len(dims) != ring.rank:
        raise ValueError("dims length must equal rank")
    a = np.array(dims, dtype=np.int64).reshape(ring.rank, 1, 1)
    return BasedModule(ring, a, labels=labels)
