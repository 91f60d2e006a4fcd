"""Exactness certification for sequences A -> B -> C (x) End(M) relative
to a based module M over A.

Two criteria are computed independently and cross-checked:
  structural: Ker(F) equals the image of iota, and F is normal
      (non-kernel simples have no component in the trivial-C block);
  numeric: alpha = FPdim(B) / (FPdim(A) FPdim(C)) equals 1.
For valid surjective data the two are equivalent; a decided disagreement
is raised as CrossCheckError (a bug, never a property of the input).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import CrossCheckError, InvalidDataError
from .fpdim import dims_intervals, fpdim_category
from .modules import (
    BasedModule,
    action_functor_matrix,
    end_ring,
    is_indecomposable,
    module_fpdims,
    one_object_module,
    validate_module,
)
from .perron import DEFAULT_TOL
from .rational import RatInterval, sqrt_interval, to_fraction
from .rings import FusionRing, deligne_product, validate_ring
from .validation import ValidationReport

ALPHA_ONE_WINDOW = Fraction(1, 10 ** 9)


class SequenceData:
    """A -> B -> C (x) End(M): rings, module, and the two functor
    matrices.  iota columns are images of A-simples in the B-basis; F
    columns are images of B-simples in the target basis, ordered
    lexicographically as Y_t (x) E_{kj} -> t*mrank^2 + k*mrank + j."""

    def __init__(self, a: FusionRing, b: FusionRing, c: FusionRing,
                 module: BasedModule, iota, f, name: str | None = None):
        self.a = a
        self.b = b
        self.c = c
        self.module = module
        self.iota = np.asarray(iota, dtype=np.int64)
        self.f = np.asarray(f, dtype=np.int64)
        self.iota.setflags(write=False)
        self.f.setflags(write=False)
        self.name = name
        self._target = None

    @property
    def mrank(self) -> int:
        return self.module.mrank

    @property
    def target(self) -> FusionRing:
        if self._target is None:
            self._target = deligne_product(self.c, end_ring(self.module))
        return self._target

    def trivial_rows(self) -> range:
        m2 = self.mrank * self.mrank
        base = self.c.unit * m2
        return range(base, base + m2)

    @property
    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for part in (self.a.digest, self.b.digest, self.c.digest,
                     self.module.digest):
            h.update(part.encode())
        h.update(self.iota.tobytes())
        h.update(self.f.tobytes())
        return h.hexdigest()

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return (f"<sequence{tag}: ranks {self.a.rank} -> {self.b.rank} "
                f"-> {self.c.rank}x{self.mrank}^2>")


def iota_image(s: SequenceData) -> tuple[int, ...]:
    """B-basis indices hit by iota columns."""
    out = []
    for a in range(s.iota.shape[1]):
        col = np.nonzero(s.iota[:, a])[0]
        if len(col) != 1:
            raise InvalidDataError(f"iota column {a} is not a basis vector")
        out.append(int(col[0]))
    return tuple(out)


def validate_sequence(s: SequenceData,
                      check_components: bool = True) -> ValidationReport:
    """Check every SequenceData invariant; component-ring and module
    violations are folded in with a:, b:, c:, module: code prefixes."""
    rep = ValidationReport("sequence")
    if check_components:
        for tag, ring in (("a", s.a), ("b", s.b), ("c", s.c)):
            sub = validate_ring(ring)
            for v in sub.violations:
                rep.add(f"{tag}:{v.code}", v.where, v.message)
        sub = validate_module(s.module, check_ring=False)
        for v in sub.violations:
            rep.add(f"module:{v.code}", v.where, v.message)
        if not rep.ok:
            return rep

    if s.module.ring.digest != s.a.digest:
        rep.add("module-ring-mismatch", (),
                "module is not a module over ring A")
        return rep
    for tag, ring in (("a", s.a), ("b", s.b), ("c", s.c)):
        if ring.is_multifusion:
            rep.add(f"{tag}-multifusion", (),
                    f"ring {tag.upper()} must have a single unit component")
    if not rep.ok:
        return rep
    for tag, ring in (("a", s.a), ("b", s.b), ("c", s.c)):
        if not ring.is_semisimple():
            rep.add("cartan-not-identity", (tag,),
                    f"ring {tag.upper()} carries a non-identity Cartan "
                    "matrix; certification requires semisimple data")

    target = s.target
    if s.iota.shape != (s.b.rank, s.a.rank):
        rep.add("iota-shape", s.iota.shape,
                f"iota must be {s.b.rank} x {s.a.rank}")
        return rep
    if s.f.shape != (target.rank, s.b.rank):
        rep.add("f-shape", s.f.shape,
                f"F must be {target.rank} x {s.b.rank}")
        return rep
    if np.any(s.iota < 0) or np.any(s.f < 0):
        rep.add("negative-entry", (), "functor matrices must be nonnegative")
        return rep

    # iota: injective basis-to-basis embedding
    matched = []
    for a in range(s.a.rank):
        col = s.iota[:, a]
        nz = np.nonzero(col)[0]
        if len(nz) != 1 or col[nz[0]] != 1:
            rep.add("iota-column", (a,),
                    "iota column is not a standard basis vector")
            return rep
        matched.append(int(nz[0]))
    if len(set(matched)) != len(matched):
        rep.add("iota-distinct", (), "iota columns must be distinct")
        return rep
    if matched[s.a.unit] != s.b.unit:
        rep.add("iota-unit", (s.a.unit,), "iota does not preserve the unit")
    for i in range(s.a.rank):
        if matched[s.a.dual[i]] != s.b.dual[matched[i]]:
            rep.add("iota-dual", (i,), "iota does not preserve duals")
            break

    defect = _kernels.hom_defect(s.a.N, s.b.N, s.iota)
    if defect is not None:
        i, j, u, lhs, rhs = defect
        rep.add("iota-hom", (i, j, u),
                f"iota(x{i} x{j}) != iota(x{i}) iota(x{j}) at basis {u}: "
                f"{lhs} != {rhs}")

    # F: unit, duals, multiplicativity
    unit_t = target.unit_vector()
    ucol = s.f[:, s.b.unit]
    if any(int(ucol[t]) != int(unit_t[t]) for t in range(target.rank)):
        rep.add("f-unit", (s.b.unit,),
                "F does not send the unit to the target unit")
    dual_ok = True
    for i in range(s.b.rank):
        di = s.b.dual[i]
        for t in range(target.rank):
            if int(s.f[target.dual[t]][di]) != int(s.f[t][i]):
                rep.add("f-dual", (i, t), "F does not preserve duals")
                dual_ok = False
                break
        if not dual_ok:
            break

    defect = _kernels.hom_defect(s.b.N, target.N, s.f)
    if defect is not None:
        i, j, u, lhs, rhs = defect
        rep.add("f-hom", (i, j, u),
                f"F(x{i} x{j}) != F(x{i}) F(x{j}) at target basis {u}: "
                f"{lhs} != {rhs}")

    # F o iota lands in the trivial-C block and is the action functor
    composite = s.f @ s.iota
    af = action_functor_matrix(s.module)
    triv = s.trivial_rows()
    for a in range(s.a.rank):
        for t in range(target.rank):
            want = int(af[t - triv.start][a]) if t in triv else 0
            if int(composite[t][a]) != want:
                rep.add("composite-action", (a, t),
                        "F o iota differs from the module action functor")
                return rep
    return rep


def _require_semisimple(s: SequenceData):
    for tag, ring in (("A", s.a), ("B", s.b), ("C", s.c)):
        if not ring.is_semisimple():
            raise InvalidDataError(
                f"certification requires identity Cartan; ring {tag} is "
                "not semisimple"
            )


def kernel_simples(s: SequenceData) -> tuple[int, ...]:
    """B-simples whose F-column is supported entirely on the trivial-C
    block.  Verifies that the result is closed under products and duals
    (guaranteed for valid data; raises otherwise)."""
    triv = s.trivial_rows()
    mask = np.ones(s.f.shape[0], dtype=bool)
    mask[triv.start:triv.stop] = False
    outside = s.f[mask, :]
    kernel = tuple(
        i for i in range(s.b.rank) if not np.any(outside[:, i])
    )
    kset = set(kernel)
    for i in kernel:
        if s.b.dual[i] not in kset:
            raise InvalidDataError(
                f"kernel is not closed under duals at {i}")
        for j in kernel:
            for k in np.nonzero(s.b.N[i][j])[0]:
                if int(k) not in kset:
                    raise InvalidDataError(
                        f"kernel is not closed under products at "
                        f"({i},{j})->{int(k)}")
    return kernel


def is_surjective_gr(s: SequenceData) -> bool:
    """Every target simple appears in some F(b)."""
    return bool(np.all(s.f.sum(axis=1) > 0))


def normality_check(s: SequenceData) -> bool:
    """True iff every non-kernel column has zero support on the
    trivial-C block (all-or-nothing support for simples)."""
    triv = s.trivial_rows()
    kernel = set(kernel_simples(s))
    block = s.f[triv.start:triv.stop, :]
    for i in range(s.b.rank):
        if i in kernel:
            continue
        if np.any(block[:, i]):
            return False
    return True


@dataclass(frozen=True)
class AlphaResult:
    """Certified enclosure of alpha = FPdim(B)/(FPdim(A) FPdim(C)),
    with the exact rational value when all three FPdims are certified
    exactly."""

    interval: RatInterval
    exact: Fraction | None

    def is_one(self) -> bool | None:
        if self.exact is not None:
            return self.exact == 1
        if self.interval.lo > 1 or self.interval.hi < 1:
            return False
        return None


def compute_alpha(s: SequenceData, tol=DEFAULT_TOL) -> AlphaResult:
    """alpha enclosure; raises on data certifying alpha < 1 while F is
    surjective (forbidden by the regular-object theorem)."""
    tol = to_fraction(tol)
    fa = fpdim_category(s.a, tol)
    fb = fpdim_category(s.b, tol)
    fc = fpdim_category(s.c, tol)
    denom = fa.as_interval() * fc.as_interval()
    interval = fb.as_interval() / denom
    exact = None
    if fa.width == 0 and fb.width == 0 and fc.width == 0:
        exact = fb.lo / (fa.lo * fc.lo)
    if is_surjective_gr(s) and interval.hi < 1 - tol:
        raise InvalidDataError(
            "alpha certified below 1 for a surjective sequence; "
            "input data is inconsistent"
        )
    return AlphaResult(interval=interval, exact=exact)


@dataclass(frozen=True)
class ExactnessReport:
    verdict: str
    reason: str
    kernel: tuple[int, ...]
    iota_image: tuple[int, ...]
    kernel_matches_iota: bool
    surjective: bool
    normal: bool
    alpha: RatInterval
    alpha_exact: Fraction | None
    alpha_is_one: bool | None
    alpha_provenance: str
    cross_check: bool | None

    @property
    def exact(self) -> bool:
        return self.verdict == "exact"


def _decide_alpha_one(alpha: AlphaResult, normal: bool):
    """Decision and provenance for alpha == 1 following the layered
    rule: exact rational arithmetic when available; otherwise an
    interval that excludes 1 decides no; an interval pinned inside
    (1 - 1e-9, 1 + 1e-9) decides yes only jointly with the integer
    normality computation."""
    if alpha.exact is not None:
        return alpha.exact == 1, "exact"
    iv = alpha.interval
    if iv.lo > 1 or iv.hi < 1:
        return False, "interval"
    if (normal and iv.lo > 1 - ALPHA_ONE_WINDOW
            and iv.hi < 1 + ALPHA_ONE_WINDOW):
        return True, "interval+normality"
    return None, "undecided"


def check_exact(s: SequenceData, tol=DEFAULT_TOL) -> ExactnessReport:
    """Full certification.  verdict is exact iff F is surjective, the
    kernel equals the iota image, F is normal, and alpha = 1; a decided
    conflict between the structural and numeric criteria raises
    CrossCheckError."""
    _require_semisimple(s)
    kernel = kernel_simples(s)
    image = iota_image(s)
    kernel_matches = set(kernel) == set(image)
    surjective = is_surjective_gr(s)
    normal = normality_check(s)
    alpha = compute_alpha(s, tol)
    alpha_is_one, provenance = _decide_alpha_one(alpha, normal)

    structural = kernel_matches and normal
    cross_check = None
    if surjective and alpha_is_one is not None:
        if structural != alpha_is_one:
            raise CrossCheckError(
                f"criterion disagreement: kernel/normality say "
                f"{structural}, alpha ({provenance}) says {alpha_is_one} "
                f"on {s!r}"
            )
        cross_check = True

    if not surjective:
        verdict, reason = "not_exact", "F is not surjective at Gr level"
    elif not kernel_matches:
        verdict, reason = "not_exact", (
            f"kernel {sorted(kernel)} differs from iota image "
            f"{sorted(image)}")
    elif not normal:
        verdict, reason = "not_exact", "F is not normal"
    elif alpha_is_one is True:
        verdict, reason = "exact", "all criteria satisfied"
    elif alpha_is_one is False:
        verdict, reason = "not_exact", "alpha differs from 1"
    else:
        verdict, reason = "undecided", (
            "alpha interval straddles 1 at the current tolerance")
    return ExactnessReport(
        verdict=verdict,
        reason=reason,
        kernel=kernel,
        iota_image=image,
        kernel_matches_iota=kernel_matches,
        surjective=surjective,
        normal=normal,
        alpha=alpha.interval,
        alpha_exact=alpha.exact,
        alpha_is_one=alpha_is_one,
        alpha_provenance=provenance,
        cross_check=cross_check,
    )


def regular_image_check(s: SequenceData, tol=DEFAULT_TOL) -> bool:
    """F applied to the regular object of B must equal alpha times the
    regular object of the target, i.e. componentwise
    alpha * FPdim(Y_t) * m_k * m_j; certified by interval intersection.
    Holds whenever F is surjective, exact or not."""
    from .fpdim import regular_object

    tol = to_fraction(tol)
    _require_semisimple(s)
    reg_b = regular_object(s.b, tol)
    reg_c = regular_object(s.c, tol)
    alpha = compute_alpha(s, tol).interval
    mdims = module_fpdims(s.module, tol).dims
    m = s.mrank
    for t in range(s.c.rank):
        for k in range(m):
            for j in range(m):
                row = t * m * m + k * m + j
                lhs = RatInterval.point(0)
                for b in range(s.b.rank):
                    coeff = int(s.f[row][b])
                    if coeff:
                        lhs = lhs + reg_b[b] * coeff
                rhs = alpha * reg_c[t] * mdims[k] * mdims[j]
                if not lhs.intersects(rhs):
                    return False
    return True


def internal_hom_fpdim_check(s: SequenceData, j: int, k: int,
                             tol=DEFAULT_TOL) -> bool:
    """FPdim of the internal hom from 1 (x) M_j to 1 (x) M_k equals
    alpha * FPdim(M_j) * FPdim(M_k): the left side is
    sum_i d_i F[u_C m^2 + k m + j][i] (multiplicities of B-simples in
    the hom object read off the trivial-C block of F)."""
    tol = to_fraction(tol)
    _require_semisimple(s)
    m = s.mrank
    if not (0 <= j < m and 0 <= k < m):
        raise IndexError("module index out of range")
    row = s.c.unit * m * m + k * m + j
    d_b = dims_intervals(s.b, tol)
    lhs = RatInterval.point(0)
    for i in range(s.b.rank):
        coeff = int(s.f[row][i])
        if coeff:
            lhs = lhs + d_b[i] * coeff
    alpha = compute_alpha(s, tol).interval
    mdims = module_fpdims(s.module, tol).dims
    rhs = alpha * mdims[j] * mdims[k]
    return lhs.intersects(rhs)


def induced_module(s: SequenceData) -> BasedModule:
    """The target module C (x) M pulled back to B through F: basis
    (t, l) at index t*mrank + l, action
    a[b][(t,l)][(t',l')] = sum_s F[s m^2 + l' m + l][b] N_C[s][t][t']."""
    m = s.mrank
    rc = s.c.rank
    rb = s.b.rank
    nm = rc * m
    nc = np.asarray(s.c.N, dtype=object)
    act = np.zeros((rb, nm, nm), dtype=object)
    for b in range(rb):
        for l in range(m):
            for l2 in range(m):
                frow = {
                    sidx: int(s.f[sidx * m * m + l2 * m + l][b])
                    for sidx in range(rc)
                    if s.f[sidx * m * m + l2 * m + l][b]
                }
                if not frow:
                    continue
                for t in range(rc):
                    for t2 in range(rc):
                        acc = 0
                        for sidx, coeff in frow.items():
                            acc += coeff * int(nc[sidx][t][t2])
                        act[b][t * m + l][t2 * m + l2] = acc
    return BasedModule(s.b, act)


def induced_module_dims(s: SequenceData, tol=DEFAULT_TOL) -> bool:
    """Certify that the B-module dims of C (x) M (normalized to
    FPdim(B)) match sqrt(alpha) * FPdim(Y_t) * FPdim(M_l) componentwise.
    Intended for exact sequences (the regular-object proposition)."""
    tol = to_fraction(tol)
    _require_semisimple(s)
    mod = induced_module(s)
    if not is_indecomposable(mod):
        return False
    ind = module_fpdims(mod, tol).dims
    c_dims = dims_intervals(s.c, tol)
    mdims = module_fpdims(s.module, tol).dims
    alpha = compute_alpha(s, tol).interval
    root = sqrt_interval(alpha, tol)
    m = s.mrank
    for t in range(s.c.rank):
        for l in range(m):
            want = root * c_dims[t] * mdims[l]
            if not ind[t * m + l].intersects(want):
                return False
    return True


def dual_dims_check(s: SequenceData, dual_a: FusionRing,
                    dual_b: FusionRing, dual_c: FusionRing,
                    tol=DEFAULT_TOL) -> bool:
    """Duality bookkeeping: claimed dual-category rings must reproduce
    the FPdims of A, B, C (certified interval intersection)."""
    tol = to_fraction(tol)
    for ring, dual in ((s.a, dual_a), (s.b, dual_b), (s.c, dual_c)):
        own = fpdim_category(ring, tol).as_interval()
        other = fpdim_category(dual, tol).as_interval()
        if not own.intersects(other):
            return False
    return True


def make_deligne_sequence(a: FusionRing, c: FusionRing,
                          module: BasedModule,
                          name: str | None = None) -> SequenceData:
    """Canonical exact sequence A -> A (x) C -> C (x) End(M) for an
    indecomposable module M over A: iota is the inclusion of the
    A-factor, F sends X_i (x) Y_t to Y_t (x) (action image of X_i)."""
    if a.is_multifusion or c.is_multifusion:
        raise InvalidDataError("A and C must be fusion rings")
    if module.ring.digest != a.digest:
        raise InvalidDataError("module must be a module over A")
    if not is_indecomposable(module):
        raise InvalidDataError("module must be indecomposable")
    b = deligne_product(a, c)
    m = module.mrank
    iota = np.zeros((b.rank, a.rank), dtype=np.int64)
    for i in range(a.rank):
        iota[i * c.rank + c.unit][i] = 1
    f = np.zeros((c.rank * m * m, b.rank), dtype=np.int64)
    for i in range(a.rank):
        for t in range(c.rank):
            col = i * c.rank + t
            for jj in range(m):
                for kk in range(m):
                    f[t * m * m + kk * m + jj][col] = int(
                        module.a[i][jj][kk])
    return SequenceData(a, b, c, module, iota, f, name=name)


def extension_sequence(g, normal_elems,
                       name: str | None = None) -> SequenceData:
    """Sequence Rep(G/G1) -> Rep(G) -> Rep(G1) relative to M = Vec for a
    normal subgroup G1 of G: iota is inflation, F is restriction."""
    from .characters import group_sequence_data

    quot, big, sub, iota_idx, restr = group_sequence_data(g, normal_elems)
    a = quot.ring
    b = big.ring
    c = sub.ring
    module = one_object_module(a, quot.dims)
    iota = np.zeros((b.rank, a.rank), dtype=np.int64)
    for j, target in enumerate(iota_idx):
        iota[target][j] = 1
    if name is None:
        gname = g.name or f"order{g.n}"
        name = f"ext-{gname}-n{len(normal_elems)}"
    return SequenceData(a, b, c, module, iota, restr, name=name)
