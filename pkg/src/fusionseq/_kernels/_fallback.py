"""Pure-Python reference implementations of the hot kernels.

These run on arbitrary-precision Python integers (and plain floats for
the power iteration), so they are always correct; the compiled versions
in ``_native`` are drop-in replacements restricted to int64-safe inputs.
"""

from __future__ import annotations


def assoc_defect(n):
    """First associativity violation of a structure-constant tensor.

    n is a rank**3 nested list; returns (i, j, k, l, lhs, rhs) for the
    first pair of products (x_i x_j) x_k != x_i (x_j x_k) at output l,
    or None when associativity holds.
    """
    r = len(n)
    for i in range(r):
        ni = n[i]
        for j in range(r):
            nij = ni[j]
            for k in range(r):
                njk = n[j][k]
                for l in range(r):
                    lhs = 0
                    rhs = 0
                    for m in range(r):
                        if nij[m]:
                            lhs += nij[m] * n[m][k][l]
                        if njk[m]:
                            rhs += ni[m][l] * njk[m]
                    if lhs != rhs:
                        return (i, j, k, l, lhs, rhs)
    return None


def module_assoc_defect(n, a):
    """First module-associativity violation.

    Checks sum_m n[i][j][m] a[m][p][q] == sum_l a[j][p][l] a[i][l][q]
    for all i, j, p, q; returns (i, j, p, q, lhs, rhs) or None.
    """
    r = len(n)
    mr = len(a[0]) if r else 0
    for i in range(r):
        ai = a[i]
        ni = n[i]
        for j in range(r):
            nij = ni[j]
            aj = a[j]
            for p in range(mr):
                ajp = aj[p]
                for q in range(mr):
                    lhs = 0
                    for m in range(r):
                        if nij[m]:
                            lhs += nij[m] * a[m][p][q]
                    rhs = 0
                    for l in range(mr):
                        if ajp[l]:
                            rhs += ajp[l] * ai[l][q]
                    if lhs != rhs:
                        return (i, j, p, q, lhs, rhs)
    return None


def hom_defect(nb, nt, f):
    """First multiplicativity violation of a ring map given by matrix f.

    f has shape (rank_target, rank_source); column i is the image of
    source basis element i.  For each source pair (i, j) the expansion of
    f(x_i x_j) is compared with f(x_i) f(x_j) in the target; returns
    (i, j, u, lhs, rhs) at the first differing target coordinate u, or
    None when f is multiplicative on all basis pairs.
    """
    rb = len(nb)
    rt = len(nt)
    for i in range(rb):
        # lm[t][u] = coefficient of x_u in f(x_i) * x_t  (target side).
        lm = [[0] * rt for _ in range(rt)]
        for s in range(rt):
            fsi = f[s][i]
            if not fsi:
                continue
            ns = nt[s]
            for t in range(rt):
                nst = ns[t]
                row = lm[t]
                for u in range(rt):
                    if nst[u]:
                        row[u] += fsi * nst[u]
        for j in range(rb):
            nij = nb[i][j]
            for u in range(rt):
                lhs = 0
                for m in range(rb):
                    if nij[m]:
                        lhs += nij[m] * f[u][m]
                rhs = 0
                for t in range(rt):
                    ftj = f[t][j]
                    if ftj:
                        rhs += ftj * lm[t][u]
                if lhs != rhs:
                    return (i, j, u, lhs, rhs)
    return None


def power_iteration(m, v0, max_iter, rtol):
    """Plain float power iteration on a nonnegative matrix.

    Returns (v, iterations) where v is 1-normalized.  Convergence is
    declared when the max-norm change per step drops below rtol; the
    caller certifies the result independently, so a stall here is not an
    error.
    """
    n = len(m)
    v = [float(x) for x in v0]
    s = sum(v)
    v = [x / s for x in v]
    it = 0
    while it < max_iter:
        w = [0.0] * n
        for i in range(n):
            row = m[i]
            acc = 0.0
            for j in range(n):
                if row[j]:
                    acc += row[j] * v[j]
            w[i] = acc
        s = sum(w)
        if s == 0.0:
            return v, it
        w = [x / s for x in w]
        delta = max(abs(a - b) for a, b in zip(w, v))
        v = w
        it += 1
        if delta < rtol:
            break
    return v, it
