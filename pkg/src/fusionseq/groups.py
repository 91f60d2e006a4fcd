"""Finite groups as explicit multiplication tables, with the small
catalog used by the bundled corpus.

Conventions: elements are 0..n-1, identity is 0, table[i][j] = i*j.
"""

from __future__ import annotations

import itertools
from math import lcm

from .errors import InvalidDataError
from .validation import ValidationReport


class GroupTable:
    """Immutable finite group given by its multiplication table."""

    def __init__(self, table, name: str | None = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = len(self.table)
        self.name = name
        self._orders = None
        self._classes = None

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        for j in range(self.n):
            if self.table[i][j] == 0:
                return j
        raise InvalidDataError(f"element {i} has no inverse")

    def inverses(self) -> list[int]:
        return [self.inverse(i) for i in range(self.n)]

    def power(self, i: int, k: int) -> int:
        out = 0
        base = i
        if k < 0:
            base = self.inverse(i)
            k = -k
        while k:
            if k & 1:
                out = self.table[out][base]
            base = self.table[base][base]
            k >>= 1
        return out

    def element_order(self, i: int) -> int:
        k = 1
        x = i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [self.element_order(i) for i in range(self.n)]
        return self._orders

    def exponent(self) -> int:
        return lcm(*self.element_orders())

    def is_abelian(self) -> bool:
        t = self.table
        return all(
            t[i][j] == t[j][i]
            for i in range(self.n) for j in range(i + 1, self.n)
        )

    def center(self) -> list[int]:
        t = self.table
        return [
            i for i in range(self.n)
            if all(t[i][j] == t[j][i] for j in range(self.n))
        ]

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes sorted by minimal element; class 0 is the identity."""
        if self._classes is not None:
            return self._classes
        inv = self.inverses()
        seen = [False] * self.n
        classes = []
        for i in range(self.n):
            if seen[i]:
                continue
            orbit = set()
            for g in range(self.n):
                orbit.add(self.table[self.table[g][i]][inv[g]])
            cls = sorted(orbit)
            for x in cls:
                seen[x] = True
            classes.append(cls)
        classes.sort(key=lambda c: c[0])
        self._classes = classes
        return classes

    def class_index(self) -> list[int]:
        out = [0] * self.n
        for ci, cls in enumerate(self.conjugacy_classes()):
            for x in cls:
                out[x] = ci
        return out

    def __repr__(self):
        tag = self.name or "group"
        return f"<{tag} of order {self.n}>"


def validate_group(g: GroupTable) -> ValidationReport:
    """Check the table is a group with identity 0: closure range,
    identity law, inverses (latin square), associativity."""
    rep = ValidationReport("group")
    n = g.n
    t = g.table
    for i in range(n):
        if len(t[i]) != n:
            rep.add("shape", (i,), "table is not square")
            return rep
    for i in range(n):
        for j in range(n):
            if not 0 <= t[i][j] < n:
                rep.add("closure", (i, j), f"entry {t[i][j]} out of range")
                return rep
    for i in range(n):
        if t[0][i] != i or t[i][0] != i:
            rep.add("identity", (i,), "element 0 is not the identity")
            return rep
    for i in range(n):
        if len(set(t[i])) != n or len({t[j][i] for j in range(n)}) != n:
            rep.add("inverses", (i,), "table is not a latin square")
            return rep
    for i in range(n):
        for j in range(n):
            tij = t[i][j]
            for k in range(n):
                if t[tij][k] != t[i][t[j][k]]:
                    rep.add("associativity", (i, j, k),
                            "(ij)k != i(jk)")
                    return rep
    return rep


def cyclic_group(n: int, name: str | None = None) -> GroupTable:
    return GroupTable(
        [[(i + j) % n for j in range(n)] for i in range(n)],
        name=name or f"z{n}",
    )


def direct_product(g1: GroupTable, g2: GroupTable,
                   name: str | None = None) -> GroupTable:
    """Index (a, b) -> a * g2.n + b."""
    n2 = g2.n
    table = [
        [
            g1.table[a1][a2] * n2 + g2.table[b1][b2]
            for a2 in range(g1.n) for b2 in range(n2)
        ]
        for a1 in range(g1.n) for b1 in range(n2)
    ]
    return GroupTable(table, name=name)


def metacyclic_group(m: int, n: int, e: int, t: int,
                     name: str | None = None) -> GroupTable:
    """Group <r, s | r^m = 1, s^n = r^e, s r s^-1 = r^t> of order m*n.

    Requires t^n = 1 (mod m) and e*(t - 1) = 0 (mod m).  Element
    r^i s^j is indexed i*n + j.
    """
    if pow(t, n, m) != 1 % m:
        raise ValueError("need t^n = 1 mod m")
    if (e * (t - 1)) % m != 0:
        raise ValueError("need e*(t-1) = 0 mod m")
    tp = [pow(t, j, m) for j in range(n)]

    def mul(i, j, k, l):
        wrap = e if j + l >= n else 0
        return ((i + k * tp[j] + wrap) % m) * n + (j + l) % n

    table = [
        [mul(a // n, a % n, b // n, b % n) for b in range(m * n)]
        for a in range(m * n)
    ]
    return GroupTable(table, name=name)


def dihedral_group(n: int, name: str | None = None) -> GroupTable:
    """Dihedral group of order 2n."""
    return metacyclic_group(n, 2, 0, n - 1, name=name or f"d{n}")


def semidirect_product(g1: GroupTable, g2: GroupTable, phi,
                       name: str | None = None) -> GroupTable:
    """g1 x| g2 where phi(h)(x) is the action of h in g2 on x in g1:
    (a, h)(b, k) = (a * phi(h)(b), h k), index (a, h) -> a * g2.n + h."""
    n2 = g2.n
    table = [
        [
            g1.table[a][phi(h, b)] * n2 + g2.table[h][k]
            for b in range(g1.n) for k in range(n2)
        ]
        for a in range(g1.n) for h in range(n2)
    ]
    return GroupTable(table, name=name)


def permutation_group(generators, name: str | None = None) -> GroupTable:
    """Closure of permutation generators (tuples mapping position ->
    image) under composition; identity gets index 0."""
    if not generators:
        raise ValueError("need at least one generator")
    deg = len(generators[0])
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(deg)):
            raise ValueError(f"not a permutation of 0..{deg - 1}: {g}")
    ident = tuple(range(deg))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(deg))
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    table = [
        [index[tuple(p[q[i]] for i in range(deg))] for q in elems]
        for p in elems
    ]
    return GroupTable(table, name=name)


def subgroup_closure(g: GroupTable, gens) -> list[int]:
    """Sorted element list of the subgroup generated by gens."""
    elems = {0}
    frontier = [0]
    gens = sorted(set(int(x) for x in gens) | {0})
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                for c in (g.table[a][b], g.table[b][a]):
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
        # newly found elements also multiply with each other
        for a in list(elems):
            for b in list(elems):
                c = g.table[a][b]
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(elems)


def all_subgroups(g: GroupTable) -> list[tuple[int, ...]]:
    """Every subgroup, as a sorted element tuple, found by repeatedly
    extending known subgroups with one outside element."""
    found = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for sub in frontier:
            inside = set(sub)
            for x in range(1, g.n):
                if x in inside:
                    continue
                bigger = tuple(subgroup_closure(g, list(sub) + [x]))
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), s))


def is_normal(g: GroupTable, elems) -> bool:
    sub = set(elems)
    inv = g.inverses()
    for x in sub:
        for a in range(g.n):
            if g.table[g.table[a][x]][inv[a]] not in sub:
                return False
    return True


def normal_subgroups(g: GroupTable) -> list[tuple[int, ...]]:
    return [s for s in all_subgroups(g) if is_normal(g, s)]


def subgroup_table(g: GroupTable, elems,
                   name: str | None = None) -> tuple[GroupTable, list[int]]:
    """Group table of a subgroup; also returns the list mapping subgroup
    index -> parent element (identity first)."""
    elems = sorted(set(int(x) for x in elems))
    if not elems or elems[0] != 0:
        raise InvalidDataError("subgroup must contain the identity")
    pos = {x: i for i, x in enumerate(elems)}
    table = []
    for a in elems:
        row = []
        for b in elems:
            c = g.table[a][b]
            if c not in pos:
                raise InvalidDataError(f"not closed: {a}*{b} = {c} outside")
            row.append(pos[c])
        table.append(row)
    return GroupTable(table, name=name), elems


def quotient_group(g: GroupTable, normal_elems,
                   name: str | None = None) -> tuple[GroupTable, list[int]]:
    """Quotient by a normal subgroup; also returns the coset index of
    each parent element (identity coset first)."""
    sub = sorted(set(int(x) for x in normal_elems))
    if not is_normal(g, sub):
        raise InvalidDataError("subgroup is not normal")
    coset_of = [-1] * g.n
    reps = []
    for x in range(g.n):
        if coset_of[x] >= 0:
            continue
        ci = len(reps)
        reps.append(x)
        for h in sub:
            coset_of[g.table[x][h]] = ci
    table = [
        [coset_of[g.table[reps[a]][reps[b]]] for b in range(len(reps))]
        for a in range(len(reps))
    ]
    return GroupTable(table, name=name), coset_of


def iso_invariants(g: GroupTable):
    """Cheap isomorphism invariants: order, abelian flag, element order
    histogram, center size, class size multiset, squaring image size."""
    orders = g.element_orders()
    hist = tuple(sorted((orders.count(k), k) for k in set(orders)))
    squares = len({g.table[i][i] for i in range(g.n)})
    classes = tuple(sorted(len(c) for c in g.conjugacy_classes()))
    return (g.n, g.is_abelian(), hist, len(g.center()), classes, squares)


def _generating_set(g: GroupTable) -> list[int]:
    orders = g.element_orders()
    by_order = sorted(range(1, g.n), key=lambda i: -orders[i])
    gens = []
    span = {0}
    for x in by_order:
        if x in span:
            continue
        gens.append(x)
        span = set(subgroup_closure(g, gens))
        if len(span) == g.n:
            return gens
    return gens


def find_isomorphism(g1: GroupTable, g2: GroupTable):
    """Explicit isomorphism g1 -> g2 as an image list, or None.

    Backtracks over order-preserving images of a generating set of g1;
    exhaustion proves non-isomorphism.
    """
    if g1.n != g2.n:
        return None
    if iso_invariants(g1) != iso_invariants(g2):
        return None
    gens = _generating_set(g1)
    orders1 = g1.element_orders()
    orders2 = g2.element_orders()
    candidates = [
        [y for y in range(g2.n) if orders2[y] == orders1[x]] for x in gens
    ]

    # express every element of g1 as word: elem = prev * gen
    parent = [None] * g1.n
    parent[0] = (0, -1)
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, x in enumerate(gens):
                b = g1.table[a][x]
                if parent[b] is None:
                    parent[b] = (a, gi)
                    nxt.append(b)
        frontier = nxt
    if any(p is None for p in parent):
        return None

    depth_order = sorted(range(g1.n), key=lambda a: 0 if a == 0 else 1)

    def build(img_gens):
        img = [None] * g1.n
        img[0] = 0
        pending = [a for a in range(g1.n) if a != 0]
        # resolve in BFS order so parents come first
        changed = True
        while pending and changed:
            changed = False
            rest = []
            for a in pending:
                pa, gi = parent[a]
                if img[pa] is not None:
                    img[a] = g2.table[img[pa]][img_gens[gi]]
                    changed = True
                else:
                    rest.append(a)
            pending = rest
        if pending or len(set(img)) != g1.n:
            return None
        for a in range(g1.n):
            ra = img[a]
            for b in range(g1.n):
                if g2.table[ra][img[b]] != img[g1.table[a][b]]:
                    return None
        return img

    for combo in itertools.product(*candidates):
        if len(set(combo)) != len(combo):
            continue
        img = build(list(combo))
        if img is not None:
            return img
    return None


def group_catalog() -> dict[str, GroupTable]:
    """Named catalog: every group of order at most 16 plus s4.

    Dihedral names follow the rotation count (d4 has order 8); sd16 and
    m16 are the semidihedral and modular groups of order 16, z4sz4 and
    z4xz2sz2 the two nontrivial order-16 semidirect products, pauli16
    the central product of d4 and z4.
    """
    cat: dict[str, GroupTable] = {}

    def put(name, g):
        g.name = name
        cat[name] = g

    for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16):
        put(f"z{n}", cyclic_group(n))
    put("z2xz2", direct_product(cyclic_group(2), cyclic_group(2)))
    put("s3", metacyclic_group(3, 2, 0, 2))
    put("z4xz2", direct_product(cyclic_group(4), cyclic_group(2)))
    put("z2xz2xz2", direct_product(cat["z2xz2"], cyclic_group(2)))
    put("d4", dihedral_group(4))
    put("q8", metacyclic_group(4, 2, 2, 3))
    put("z3xz3", direct_product(cyclic_group(3), cyclic_group(3)))
    put("d5", dihedral_group(5))
    put("z6xz2", direct_product(cyclic_group(6), cyclic_group(2)))
    put("d6", dihedral_group(6))
    put("a4", permutation_group([(1, 2, 0, 3), (1, 0, 3, 2)]))
    put("dic3", metacyclic_group(6, 2, 3, 5))
    put("d7", dihedral_group(7))
    put("z8xz2", direct_product(cyclic_group(8), cyclic_group(2)))
    put("z4xz4", direct_product(cyclic_group(4), cyclic_group(4)))
    put("z4xz2xz2", direct_product(cat["z4xz2"], cyclic_group(2)))
    put("z2xz2xz2xz2", direct_product(cat["z2xz2xz2"], cyclic_group(2)))
    put("d8", dihedral_group(8))
    put("q16", metacyclic_group(8, 2, 4, 7))
    put("sd16", metacyclic_group(8, 2, 0, 3))
    put("m16", metacyclic_group(8, 2, 0, 5))
    put("d4xz2", direct_product(cat["d4"], cyclic_group(2)))
    put("q8xz2", direct_product(cat["q8"], cyclic_group(2)))
    put("z4sz4", metacyclic_group(4, 4, 0, 3))

    # (z4 x z2) x| z2, the flip adding the z4 coordinate's parity
    z4xz2 = cat["z4xz2"]

    def phi(h, b):
        if h == 0:
            return b
        i, j = divmod(b, 2)
        return i * 2 + (j + i) % 2

    put("z4xz2sz2", semidirect_product(z4xz2, cyclic_group(2), phi))

    # central product d4 o z4: quotient of d4 x z4 by <(r^2, z^2)>
    big = direct_product(cat["d4"], cyclic_group(4))
    rr = 4 * 4 + 0  # r^2 in d4 is (i=2, j=0) -> index 4; paired with z^0
    zz = 0 * 4 + 2  # z^2 in z4
    diag = big.table[rr][zz]
    q, _ = quotient_group(big, subgroup_closure(big, [diag]))
    put("pauli16", q)

    put("s4", permutation_group([(1, 0, 2, 3), (1, 2, 3, 0)]))
    return cat
