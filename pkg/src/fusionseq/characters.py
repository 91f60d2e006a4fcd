"""Representation rings of finite groups computed from class algebras
over a prime field.

Strategy: pick a prime p = 1 (mod exp(G)) with p > max(|G|^3, 3), so
every character value lands in F_p and every fusion coefficient lifts
uniquely from its residue.  The class matrices generate a split
commutative semisimple algebra; their joint eigenvectors are the rows of
the character table up to normalization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import InvalidDataError, SpectrumSplitError
from .groups import GroupTable, quotient_group, subgroup_table
from .rings import FusionRing

_MAX_PRIME_ATTEMPTS = 5

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def splitting_prime(order: int, exponent: int, skip: int = 0) -> int:
    """Smallest prime p = 1 (mod exponent) with p > max(order^3, 3),
    skipping the first `skip` hits."""
    lower = max(order ** 3, 3)
    p = lower - (lower - 1) % exponent + exponent
    while True:
        if p > lower and is_prime(p):
            if skip == 0:
                return p
            skip -= 1
        p += exponent


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo odd prime p, or None for non-residues
    (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


# --- polynomial arithmetic mod p (coefficients low degree first) ---

def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_mod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1] * inv_lead % p
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        _poly_trim(f)
    return f


def _poly_divexact(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * (len(f) - dg)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = f[-1] * inv_lead % p
        q[k] = c
        for i in range(len(g)):
            f[k + i] = (f[k + i] - c * g[i]) % p
        _poly_trim(f)
    return _poly_trim(q)


def _poly_gcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _poly_mod(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _poly_powmod(base, e, mod, p):
    out = [1]
    base = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            out = _poly_mod(_poly_mul(out, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        e >>= 1
    return out


def poly_roots(f, p: int, rng: random.Random) -> list[int]:
    """Distinct roots in F_p of f (Cantor-Zassenhaus equal-degree
    splitting on the product of distinct linear factors)."""
    f = _poly_trim(list(f))
    if len(f) <= 1:
        return []
    inv = pow(f[-1], p - 2, p)
    f = [c * inv % p for c in f]
    xp = _poly_powmod([0, 1], p, f, p)
    xp_minus_x = list(xp) + [0] * (2 - len(xp))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _poly_gcd(_poly_trim(xp_minus_x), f, p)

    def split(h):
        if len(h) <= 1:
            return []
        if len(h) == 2:
            return [(-h[0]) % p]
        while True:
            a = rng.randrange(p)
            w = _poly_powmod([a, 1], (p - 1) // 2, h, p)
            w = list(w) + [0] * (1 - len(w)) if not w else list(w)
            w[0] = (w[0] - 1) % p
            d = _poly_gcd(_poly_trim(w), h, p)
            if 0 < len(d) - 1 < len(h) - 1:
                return split(d) + split(_poly_divexact(h, d, p))

    return sorted(split(g))


# --- linear algebra mod p ---

def _nullspace_mod(rows, p: int) -> list[list[int]]:
    n = len(rows)
    if n == 0:
        return []
    m = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if mat[r][col] % p), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(n):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(x - c * y) % p for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-mat[r][fc]) % p
        basis.append(v)
    return basis


def _solve_in_span(basis, targets, p: int):
    """Coordinates of each target vector in span(basis); None when some
    target falls outside.  basis and targets are lists of vectors."""
    k = len(basis)
    m = len(basis[0])
    t = len(targets)
    aug = [[basis[j][i] for j in range(k)] + [tv[i] for tv in targets]
           for i in range(m)]
    rank = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(rank, m) if aug[r][col] % p), None)
        if piv is None:
            return None
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = pow(aug[rank][col], p - 2, p)
        aug[rank] = [x * inv % p for x in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                c = aug[r][col]
                aug[r] = [(x - c * y) % p for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, m):
        if any(aug[r][k + j] % p for j in range(t)):
            return None
    return [[aug[r][k + j] % p for r in range(rank)] for j in range(t)]


def _charpoly_mod(mat, p: int) -> list[int]:
    """Characteristic polynomial (monic, low degree first) via the
    Faddeev-LeVerrier recurrence; requires p > deg."""
    n = len(mat)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = [
            [sum(mat[i][l] * mk[l][j] for l in range(n)) % p
             for j in range(n)]
            for i in range(n)
        ]
        tr = sum(am[i][i] for i in range(n)) % p
        ck = (-tr) * pow(k, p - 2, p) % p
        coeffs[n - k] = ck
        mk = [[(am[i][j] + (ck if i == j else 0)) % p for j in range(n)]
              for i in range(n)]
    return coeffs


def _joint_eigenvectors(mats, p: int, rng: random.Random) -> list[list[int]]:
    """One vector per joint eigenspace of a commuting split semisimple
    family; raises SpectrumSplitError when the family fails to separate."""
    r = len(mats[0])
    spaces = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]

    def combos():
        for _ in range(3):
            w = [rng.randrange(1, p) for _ in mats]
            yield [
                [sum(wi * m[a][b] for wi, m in zip(w, mats)) % p
                 for b in range(r)]
                for a in range(r)
            ]
        yield from mats

    for mat in combos():
        if all(len(b) == 1 for b in spaces):
            break
        nxt = []
        for basis in spaces:
            if len(basis) == 1:
                nxt.append(basis)
                continue
            images = [
                [sum(mat[i][l] * v[l] for l in range(r)) % p
                 for i in range(r)]
                for v in basis
            ]
            coords = _solve_in_span(basis, images, p)
            if coords is None:
                raise SpectrumSplitError("subspace not invariant")
            k = len(basis)
            a_small = [[coords[j][i] for j in range(k)] for i in range(k)]
            roots = poly_roots(_charpoly_mod(a_small, p), p, rng)
            parts = []
            covered = 0
            for root in roots:
                shifted = [
                    [(a_small[i][j] - (root if i == j else 0)) % p
                     for j in range(k)]
                    for i in range(k)
                ]
                for c in _nullspace_mod(shifted, p):
                    vec = [
                        sum(c[j] * basis[j][i] for j in range(k)) % p
                        for i in range(r)
                    ]
                    parts.append(vec)
                    covered += 1
            if covered != k:
                raise SpectrumSplitError("restriction failed to split")
            # group the new vectors back into eigenspaces per root
            idx = 0
            for root in roots:
                shifted = [
                    [(a_small[i][j] - (root if i == j else 0)) % p
                     for j in range(k)]
                    for i in range(k)
                ]
                dim = len(_nullspace_mod(shifted, p))
                nxt.append(parts[idx:idx + dim])
                idx += dim
        spaces = nxt
    if any(len(b) != 1 for b in spaces):
        raise SpectrumSplitError("class matrices did not separate")
    return [b[0] for b in spaces]


@dataclass(frozen=True)
class CharacterFusion:
    """Representation ring of a finite group with its modular character
    table.  char_values[i][c] is chi_i at class c, as a residue mod
    prime; basis i of ring corresponds to character i."""

    ring: FusionRing
    group: GroupTable
    prime: int
    dims: tuple[int, ...]
    char_values: tuple[tuple[int, ...], ...]
    class_reps: tuple[int, ...]
    class_sizes: tuple[int, ...]
    inverse_class: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.ring.rank


def _class_data(g: GroupTable):
    classes = g.conjugacy_classes()
    cindex = g.class_index()
    reps = [c[0] for c in classes]
    sizes = [len(c) for c in classes]
    inv = g.inverses()
    inv_class = [cindex[inv[reps[c]]] for c in range(len(classes))]
    return classes, cindex, reps, sizes, inv_class


def _class_matrices(g: GroupTable, classes, cindex, reps):
    """mats[i][j][k] = number of pairs (x, y) in C_i x C_j with
    x*y = z_k for a fixed representative z_k."""
    r = len(classes)
    inv = g.inverses()
    mats = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        mi = mats[i]
        for k in range(r):
            zk = reps[k]
            for x in classes[i]:
                y = g.table[inv[x]][zk]
                mi[cindex[y]][k] += 1
    # orient as action on omega vectors: (M_i)_{jk} = c_{ijk}
    out = []
    for i in range(r):
        out.append([[mats[i][j][k] for k in range(r)] for j in range(r)])
    return out


def _build_at_prime(g: GroupTable, p: int) -> CharacterFusion:
    n = g.n
    classes, cindex, reps, sizes, inv_class = _class_data(g)
    r = len(classes)
    rng = random.Random(n * 0x9E3779B1 ^ p)
    mats = _class_matrices(g, classes, cindex, reps)
    vecs = _joint_eigenvectors(mats, p, rng)
    if len(vecs) != r:
        raise SpectrumSplitError("wrong number of eigenvectors")

    inv_sizes = [pow(s, p - 2, p) for s in sizes]
    chars = []
    dims = []
    root_bound = isqrt(n)
    for v in vecs:
        if v[0] == 0:
            raise SpectrumSplitError("degenerate eigenvector")
        scale = pow(v[0], p - 2, p)
        v = [x * scale % p for x in v]
        s = sum(v[j] * v[inv_class[j]] * inv_sizes[j] for j in range(r)) % p
        if s == 0:
            raise SpectrumSplitError("norm vanished")
        d2 = n * pow(s, p - 2, p) % p
        d = sqrt_mod(d2, p)
        if d is None:
            raise SpectrumSplitError("dimension is not a square residue")
        if d > root_bound:
            d = p - d
        if not 1 <= d <= root_bound or d * d % p != d2:
            raise SpectrumSplitError("dimension out of range")
        chars.append([d * v[j] * inv_sizes[j] % p for j in range(r)])
        dims.append(d)
    if sum(x * x for x in dims) != n:
        raise SpectrumSplitError("squared dimensions do not sum to order")

    # canonical order: trivial character first, then by dimension/values
    order = sorted(
        range(r),
        key=lambda i: (dims[i] != 1 or any(x != 1 for x in chars[i]),
                       dims[i], chars[i]),
    )
    chars = [chars[i] for i in order]
    dims = [dims[i] for i in order]
    if dims[0] != 1 or any(x != 1 for x in chars[0]):
        raise SpectrumSplitError("trivial character missing")

    inv_n = pow(n, p - 2, p)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                acc = 0
                for c in range(r):
                    acc += (sizes[c] * chars[i][c] % p) * (
                        chars[j][c] * chars[k][inv_class[c]] % p)
                val = acc % p * inv_n % p
                if val > n:
                    raise SpectrumSplitError(
                        f"fusion coefficient {val} exceeds group order")
                tensor[i][j][k] = val

    dual = []
    for i in range(r):
        target = [chars[i][inv_class[c]] for c in range(r)]
        match = [j for j in range(r) if chars[j] == target]
        if len(match) != 1:
            raise SpectrumSplitError("dual character not unique")
        dual.append(match[0])

    labels = [f"chi{i}" for i in range(r)]
    ring = FusionRing(tensor, dual=dual, unit=0, labels=labels)
    return CharacterFusion(
        ring=ring,
        group=g,
        prime=p,
        dims=tuple(dims),
        char_values=tuple(tuple(c) for c in chars),
        class_reps=tuple(reps),
        class_sizes=tuple(sizes),
        inverse_class=tuple(inv_class),
    )


_REP_CACHE: dict = {}


def rep_g_fusion(g: GroupTable, prime: int | None = None) -> CharacterFusion:
    """Representation ring of g with character data.

    With an explicit prime this is a single attempt; otherwise primes
    are tried in order until the spectrum splits (cap 5).
    """
    key = (g.table, prime)
    hit = _REP_CACHE.get(key)
    if hit is not None:
        return hit
    if prime is not None:
        out = _build_at_prime(g, prime)
    else:
        exponent = g.exponent()
        last = None
        for attempt in range(_MAX_PRIME_ATTEMPTS):
            p = splitting_prime(g.n, exponent, skip=attempt)
            try:
                out = _build_at_prime(g, p)
                break
            except SpectrumSplitError as exc:
                last = exc
        else:
            raise SpectrumSplitError(
                f"no usable prime after {_MAX_PRIME_ATTEMPTS} attempts: "
                f"{last}"
            )
    if len(_REP_CACHE) > 256:
        _REP_CACHE.clear()
    _REP_CACHE[key] = out
    return out


def vec_g_ring(g: GroupTable) -> FusionRing:
    """Pointed ring of the group: basis = group elements, x_i x_j =
    x_{ij}, duals are inverses."""
    n = g.n
    tensor = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            tensor[i][j][g.table[i][j]] = 1
    labels = [f"g{i}" for i in range(n)]
    return FusionRing(tensor, dual=g.inverses(), unit=0, labels=labels)


def restriction_matrix(big: CharacterFusion, sub: CharacterFusion,
                       embedding) -> np.ndarray:
    """R[j][i] = multiplicity of sub-character j in the restriction of
    big-character i, computed at the shared prime."""
    if big.prime != sub.prime:
        raise InvalidDataError("character tables use different primes")
    p = big.prime
    h = sub.group
    embedding = [int(x) for x in embedding]
    if len(embedding) != h.n:
        raise InvalidDataError("embedding length must equal subgroup order")
    big_cindex = big.group.class_index()
    sub_cindex = h.class_index()
    hinv = h.inverses()
    inv_order = pow(h.n, p - 2, p)
    out = np.zeros((sub.rank, big.rank), dtype=np.int64)
    for i in range(big.rank):
        chi = big.char_values[i]
        for j in range(sub.rank):
            psi = sub.char_values[j]
            acc = 0
            for x in range(h.n):
                acc += chi[big_cindex[embedding[x]]] * psi[sub_cindex[hinv[x]]]
            val = acc % p * inv_order % p
            if val > big.group.n:
                raise SpectrumSplitError(
                    "restriction multiplicity exceeds group order")
            out[j][i] = val
    for i in range(big.rank):
        got = sum(int(out[j][i]) * sub.dims[j] for j in range(sub.rank))
        if got != big.dims[i]:
            raise SpectrumSplitError("restricted dimensions do not add up")
    return out


def inflation_matching(big: CharacterFusion, quot: CharacterFusion,
                       coset_of) -> list[int]:
    """For each character of the quotient, the index of its inflation in
    the big table: match value rows through the coset map."""
    if big.prime != quot.prime:
        raise InvalidDataError("character tables use different primes")
    big_cindex = big.group.class_index()
    quot_cindex = quot.group.class_index()
    out = []
    for j in range(quot.rank):
        psi = quot.char_values[j]
        values = tuple(
            psi[quot_cindex[coset_of[big.class_reps[c]]]]
            for c in range(len(big.class_reps))
        )
        match = [i for i in range(big.rank)
                 if big.char_values[i] == values]
        if len(match) != 1:
            raise SpectrumSplitError("inflated character not matched")
        out.append(match[0])
    return out


def group_sequence_data(g: GroupTable, normal_elems):
    """Character-level data for the extension sequence of a normal
    subgroup: representation rings of quotient, group, and subgroup at a
    shared prime, the inflation matching, and the restriction matrix.

    Returns (quot_cf, big_cf, sub_cf, iota_indices, restriction).
    """
    sub_tbl, embedding = subgroup_table(g, normal_elems)
    quot_tbl, coset_of = quotient_group(g, normal_elems)
    exponent = g.exponent()
    last = None
    for attempt in range(_MAX_PRIME_ATTEMPTS):
        p = splitting_prime(g.n, exponent, skip=attempt)
        try:
            big = rep_g_fusion(g, prime=p)
            sub = rep_g_fusion(sub_tbl, prime=p)
            quot = rep_g_fusion(quot_tbl, prime=p)
            iota = inflation_matching(big, quot, coset_of)
            restr = restriction_matrix(big, sub, embedding)
            return quot, big, sub, iota, restr
        except SpectrumSplitError as exc:
            last = exc
    raise SpectrumSplitError(
        f"no shared prime worked after {_MAX_PRIME_ATTEMPTS} attempts: {last}"
    )
