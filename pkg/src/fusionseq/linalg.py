"""Exact linear algebra helpers: strongly connected components, rational
nullspaces, and interval Gaussian elimination.

Sizes here are small (a few dozen rows at most), so clarity and exactness
win over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction

from .rational import RatInterval, to_fraction


def tarjan_scc(adj: list[list[int]]) -> list[list[int]]:
    """Strongly connected components of a digraph given as adjacency lists.

    Iterative Tarjan; returns components in reverse topological order
    (callers here only need the partition, not the order).
    """
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # Each work item is (vertex, iterator position into adj[vertex]).
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def fraction_rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (rref rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def fraction_nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace of a matrix over Q."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if ncols == 0:
        return []
    rref, pivots = fraction_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def integer_kernel_vector(rows: list[list[int]]) -> list[int] | None:
    """One primitive integer kernel vector of an integer matrix, or None
    if the kernel is trivial.  When the kernel has dimension > 1 an
    arbitrary basis vector is returned."""
    frac_rows = [[Fraction(x) for x in row] for row in rows]
    basis = fraction_nullspace(frac_rows)
    if not basis:
        return None
    vec = basis[0]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def verify_eigen_pair(matrix, value, vector) -> bool:
    """Exact check that matrix @ vector == value * vector."""
    n = len(matrix)
    value = Fraction(value)
    for i in range(n):
        acc = Fraction(0)
        row = matrix[i]
        for j in range(n):
            if vector[j]:
                acc += Fraction(row[j]) * vector[j]
        if acc != value * vector[i]:
            return False
    return True


def interval_ge_solve(
    a: list[list[RatInterval]], b: list[RatInterval]
) -> list[RatInterval] | None:
    """Solve an n x n interval linear system by Gaussian elimination.

    Returns componentwise enclosures of {x : A0 x = b0, A0 in a, b0 in b},
    or None when some pivot interval contains zero (the system may then be
    singular somewhere inside the intervals; callers refine and retry).
    """
    n = len(a)
    m = [[RatInterval._coerce(x) for x in row] + [RatInterval._coerce(b[i])]
         for i, row in enumerate(a)]
    for col in range(n):
        # Pivot with the largest mignitude (min |x| over the interval).
        best, best_mig = None, Fraction(0)
        for r in range(col, n):
            iv = m[r][col]
            if iv.lo > 0:
                mig = iv.lo
            elif iv.hi < 0:
                mig = -iv.hi
            else:
                continue
            if best is None or mig > best_mig:
                best, best_mig = r, mig
        if best is None:
            return None
        m[col], m[best] = m[best], m[col]
        piv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col].lo == 0 and m[r][col].hi == 0:
                continue
            f = m[r][col] / piv
            m[r] = [
                m[r][c] - f * m[col][c] if c >= col else RatInterval.point(0)
                for c in range(n + 1)
            ]
    xs: list[RatInterval] = [RatInterval.point(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n]
        for c in range(r + 1, n):
            acc = acc - m[r][c] * xs[c]
        xs[r] = acc / m[r][r]
    return xs
