"""Fusion rings and multifusion rings with a distinguished basis.

A ring is given by its rank, nonnegative integer structure constants
N[i][j][k] (the coefficient of basis element k in the product x_i x_j),
a duality involution, and either a single unit basis element or, for
multifusion rings, the list of basis elements whose sum is the unit.
An optional Cartan matrix records composition multiplicities of
projective covers; omitting it (or passing the identity) means the
semisimple case.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

import numpy as np

from . import _kernels
from .rational import to_fraction
from .validation import ValidationReport

_MAX_VIOLATIONS = 25


def _as_structure_array(n, what="structure constants"):
    """Coerce to an integer numpy array, object dtype when entries exceed
    int64.  Rejects floats at the type level; sign is checked by
    validation."""
    arr = np.asarray(n)
    if arr.dtype.kind == "i":
        out = arr.astype(np.int64, copy=True)
    elif arr.dtype.kind == "u":
        if arr.size and int(arr.max()) >= 2**62:
            out = arr.astype(object, copy=True)
        else:
            out = arr.astype(np.int64, copy=True)
    elif arr.dtype == object:
        flat = []
        for x in arr.flat:
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
                raise TypeError(f"{what} must be integers, got {type(x).__name__}")
            flat.append(int(x))
        if any(abs(x) >= 2**62 for x in flat):
            out = np.empty(arr.shape, dtype=object)
            out.flat[:] = flat
        else:
            out = np.array(flat, dtype=np.int64).reshape(arr.shape)
    else:
        raise TypeError(f"{what} must be integers, got dtype {arr.dtype}")
    out.setflags(write=False)
    return out


class FusionRing:
    """Immutable based ring. Do not mutate the arrays after construction."""

    def __init__(self, n, dual, unit=None, unit_components=None, cartan=None,
                 labels=None):
        self.N = _as_structure_array(n)
        if self.N.ndim != 3 or len(set(self.N.shape)) != 1:
            raise ValueError(f"N must be rank^3, got shape {self.N.shape}")
        self.rank = int(self.N.shape[0])
        self.dual = tuple(int(d) for d in dual)
        if (unit is None) == (unit_components is None):
            raise ValueError("give exactly one of unit / unit_components")
        if unit is not None:
            self.unit = int(unit)
            self.unit_components = (self.unit,)
            self.is_multifusion = False
        else:
            comps = tuple(sorted(int(c) for c in unit_components))
            if len(comps) != len(set(comps)) or not comps:
                raise ValueError("unit_components must be distinct and nonempty")
            self.unit = comps[0] if len(comps) == 1 else None
            self.unit_components = comps
            self.is_multifusion = True
        self.cartan = None if cartan is None else _as_structure_array(
            cartan, "cartan matrix")
        self.labels = None if labels is None else tuple(str(x) for x in labels)
        if self.labels is not None and len(self.labels) != self.rank:
            raise ValueError("labels length must equal rank")
        self._digest = None

    # -- identity -------------------------------------------------------

    @property
    def digest(self) -> str:
        if self._digest is None:
            h = hashlib.sha256()
            h.update(repr((self.rank, self.dual, self.unit_components,
                           self.is_multifusion)).encode())
            h.update(repr(self.N.tolist()).encode())
            h.update(repr(None if self.cartan is None
                          else self.cartan.tolist()).encode())
            self._digest = h.hexdigest()
        return self._digest

    def __eq__(self, other):
        return isinstance(other, FusionRing) and self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        kind = "multifusion" if self.is_multifusion else "fusion"
        return f"<{kind} ring, rank {self.rank}>"

    # -- helpers --------------------------------------------------------

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"x{i}"

    def unit_vector(self) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        for c in self.unit_components:
            v[c] = 1
        return v

    def is_semisimple(self) -> bool:
        if self.cartan is None:
            return True
        return bool(
            np.array_equal(np.asarray(self.cartan, dtype=object),
                           np.eye(self.rank, dtype=object))
        )

    def basis_left_mult(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis element i:
        L[k][j] = N[i][j][k]."""
        return self.N[i].T

    def total_left_mult(self) -> np.ndarray:
        """Matrix of left multiplication by the sum of all basis
        elements; irreducible for any valid indecomposable based ring
        with duality."""
        return np.asarray(self.N, dtype=object).sum(axis=0).T

    def element(self, coeffs) -> "GrothendieckElement":
        return GrothendieckElement(self, tuple(to_fraction(c) for c in coeffs))

    def basis_element(self, i: int) -> "GrothendieckElement":
        coeffs = [Fraction(0)] * self.rank
        coeffs[i] = Fraction(1)
        return GrothendieckElement(self, tuple(coeffs))


class GrothendieckElement:
    """An element of the ring written in the distinguished basis."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FusionRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(to_fraction(c) for c in coeffs)
        if len(self.coeffs) != ring.rank:
            raise ValueError("coefficient vector length must equal rank")

    def _check_same_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("elements live in different rings")

    def __add__(self, other):
        self._check_same_ring(other)
        return GrothendieckElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check_same_ring(other)
        return GrothendieckElement(
            self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        if isinstance(other, GrothendieckElement):
            self._check_same_ring(other)
            n = self.ring.N
            r = self.ring.rank
            out = [Fraction(0)] * r
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b:
                        continue
                    row = n[i][j]
                    ab = a * b
                    for k in range(r):
                        if row[k]:
                            out[k] += ab * int(row[k])
            return GrothendieckElement(self.ring, tuple(out))
        return GrothendieckElement(
            self.ring, tuple(to_fraction(other) * c for c in self.coeffs)
        )

    __rmul__ = __mul__

    def dual(self) -> "GrothendieckElement":
        out = [Fraction(0)] * self.ring.rank
        for i, c in enumerate(self.coeffs):
            out[self.ring.dual[i]] = c
        return GrothendieckElement(self.ring, tuple(out))

    def __eq__(self, other):
        return (
            isinstance(other, GrothendieckElement)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = [
            f"{c}*{self.ring.label(i)}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def left_mult_matrix(ring: FusionRing, coeffs) -> list[list[Fraction]]:
    """Matrix of left multiplication by the element with the given
    rational coefficient vector: L[k][j] = sum_i coeffs[i] N[i][j][k]."""
    coeffs = [to_fraction(c) for c in coeffs]
    if len(coeffs) != ring.rank:
        raise ValueError("coefficient vector length must equal rank")
    r = ring.rank
    n = ring.N
    out = [[Fraction(0)] * r for _ in range(r)]
    for i, c in enumerate(coeffs):
        if not c:
            continue
        ni = n[i]
        for j in range(r):
            row = ni[j]
            for k in range(r):
                if row[k]:
                    out[k][j] += c * int(row[k])
    return out


def validate_ring(ring: FusionRing) -> ValidationReport:
    """Check every based-ring axiom and return a machine-readable report.

    Codes: negative-entry, unit-law, dual-involution, dual-range,
    frobenius-unit, frobenius-symmetry, associativity, cartan-shape,
    cartan-negative, cartan-diagonal, unit-range.
    """
    rep = ValidationReport("ring")
    r = ring.rank
    n = ring.N

    if len(ring.dual) != r:
        rep.add("dual-range", (), "dual map length differs from rank")
        return rep
    for i, d in enumerate(ring.dual):
        if not 0 <= d < r:
            rep.add("dual-range", (i,), f"dual[{i}] = {d} out of range")
            return rep
    for c in ring.unit_components:
        if not 0 <= c < r:
            rep.add("unit-range", (c,), f"unit component {c} out of range")
            return rep

    for idx in zip(*np.nonzero(np.asarray(n, dtype=object) < 0)):
        if len(rep.violations) >= _MAX_VIOLATIONS:
            break
        i, j, k = (int(x) for x in idx)
        rep.add("negative-entry", (i, j, k), f"N[{i}][{j}][{k}] < 0")
    if not rep.ok:
        return rep

    uc = set(ring.unit_components)
    for j in range(r):
        for k in range(r):
            left = sum(int(n[c][j][k]) for c in uc)
            right = sum(int(n[j][c][k]) for c in uc)
            want = 1 if j == k else 0
            if left != want:
                rep.add("unit-law", (j, k),
                        f"unit * x{j} has coefficient {left} at x{k}")
            if right != want:
                rep.add("unit-law", (j, k),
                        f"x{j} * unit has coefficient {right} at x{k}")
            if len(rep.violations) >= _MAX_VIOLATIONS:
                return rep

    for i in range(r):
        if ring.dual[ring.dual[i]] != i:
            rep.add("dual-involution", (i,), "dual map is not an involution")
    if not rep.ok:
        return rep

    dual = ring.dual
    for i in range(r):
        for j in range(r):
            coeff = sum(int(n[i][j][c]) for c in uc)
            want = 1 if j == dual[i] else 0
            if coeff != want:
                rep.add(
                    "frobenius-unit", (i, j),
                    f"x{i} x{j} has unit coefficient {coeff}, expected {want}",
                )
                if len(rep.violations) >= _MAX_VIOLATIONS:
                    return rep

    for i in range(r):
        for j in range(r):
            for k in range(r):
                if int(n[i][j][k]) != int(n[dual[j]][dual[i]][dual[k]]):
                    rep.add(
                        "frobenius-symmetry", (i, j, k),
                        "N[i][j][k] != N[j*][i*][k*]",
                    )
                    if len(rep.violations) >= _MAX_VIOLATIONS:
                        return rep

    defect = _kernels.assoc_defect(n)
    if defect is not None:
        i, j, k, l, lhs, rhs = defect
        rep.add(
            "associativity", (i, j, k, l),
            f"(x{i} x{j}) x{k} and x{i} (x{j} x{k}) differ at x{l}: "
            f"{lhs} != {rhs}",
        )

    if ring.cartan is not None:
        c = ring.cartan
        if c.ndim != 2 or c.shape != (r, r):
            rep.add("cartan-shape", tuple(int(s) for s in c.shape),
                    "cartan matrix must be rank x rank")
        else:
            for i in range(r):
                for j in range(r):
                    if int(c[i][j]) < 0:
                        rep.add("cartan-negative", (i, j), "negative entry")
                if int(c[i][i]) <= 0:
                    rep.add("cartan-diagonal", (i,),
                            "diagonal of cartan matrix must be positive")
    return rep


# -- constructors and functorial operations ----------------------------


def trivial_ring() -> FusionRing:
    return FusionRing(np.ones((1, 1, 1), dtype=np.int64), dual=(0,), unit=0,
                      labels=("1",))


def fibonacci_ring() -> FusionRing:
    """Rank 2: x*x = 1 + x.  Smallest ring with irrational dimensions."""
    n = np.zeros((2, 2, 2), dtype=np.int64)
    n[0, 0, 0] = 1
    n[0, 1, 1] = 1
    n[1, 0, 1] = 1
    n[1, 1, 0] = 1
    n[1, 1, 1] = 1
    return FusionRing(n, dual=(0, 1), unit=0, labels=("1", "x"))


def ising_ring() -> FusionRing:
    """Rank 3 {1, s, p}: s*s = 1 + p, s*p = p*s = s, p*p = 1."""
    n = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        n[0, j, j] = 1
        n[j, 0, j] = 1
    n[1, 1, 0] = 1
    n[1, 1, 2] = 1
    n[1, 2, 1] = 1
    n[2, 1, 1] = 1
    n[2, 2, 0] = 1
    return FusionRing(n, dual=(0, 1, 2), unit=0, labels=("1", "s", "p"))


def opposite_ring(ring: FusionRing) -> FusionRing:
    """Same basis with reversed multiplication order."""
    n = np.asarray(ring.N).transpose(1, 0, 2)
    kwargs = {}
    if ring.is_multifusion:
        kwargs["unit_components"] = ring.unit_components
    else:
        kwargs["unit"] = ring.unit
    return FusionRing(n, dual=ring.dual, cartan=ring.cartan,
                      labels=ring.labels, **kwargs)


def deligne_product(r1: FusionRing, r2: FusionRing) -> FusionRing:
    """Product ring on pairs (i, j) -> index i * rank2 + j with
    componentwise structure constants, duality, and unit."""
    a = np.asarray(r1.N, dtype=object)
    b = np.asarray(r2.N, dtype=object)
    n = np.einsum("ikm,jln->ijklmn", a, b).reshape(
        r1.rank * r2.rank, r1.rank * r2.rank, r1.rank * r2.rank
    )
    dual = [
        r1.dual[i] * r2.rank + r2.dual[j]
        for i in range(r1.rank)
        for j in range(r2.rank)
    ]
    kwargs = {}
    if r1.is_multifusion or r2.is_multifusion:
        kwargs["unit_components"] = [
            c1 * r2.rank + c2
            for c1 in r1.unit_components
            for c2 in r2.unit_components
        ]
    else:
        kwargs["unit"] = r1.unit * r2.rank + r2.unit
    cartan = None
    if r1.cartan is not None or r2.cartan is not None:
        c1 = (np.asarray(r1.cartan, dtype=object) if r1.cartan is not None
              else np.eye(r1.rank, dtype=object))
        c2 = (np.asarray(r2.cartan, dtype=object) if r2.cartan is not None
              else np.eye(r2.rank, dtype=object))
        cartan = np.kron(c1, c2)
    labels = None
    if r1.labels is not None and r2.labels is not None:
        labels = [
            f"{l1}(x){l2}" for l1 in r1.labels for l2 in r2.labels
        ]
    return FusionRing(n, dual=dual, cartan=cartan, labels=labels, **kwargs)
