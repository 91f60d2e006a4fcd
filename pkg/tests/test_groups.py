"""Group tables, catalog integrity, subgroups, and isomorphism."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionseq.groups import (
    GroupTable,
    all_subgroups,
    cyclic_group,
    dihedral_group,
    direct_product,
    find_isomorphism,
    is_normal,
    iso_invariants,
    metacyclic_group,
    normal_subgroups,
    permutation_group,
    quotient_group,
    subgroup_closure,
    subgroup_table,
    validate_group,
)

EXPECTED_ORDER_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
                         9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1,
                         16: 14, 24: 1}


def test_catalog_complete(catalog):
    assert len(catalog) == 43
    counts = {}
    for g in catalog.values():
        counts[g.n] = counts.get(g.n, 0) + 1
    assert counts == EXPECTED_ORDER_COUNTS


def test_catalog_tables_valid(catalog):
    for name, g in catalog.items():
        assert validate_group(g).ok, name
        assert g.name == name


def test_catalog_pairwise_nonisomorphic(catalog):
    groups = sorted(catalog.items())
    for (n1, g1), (n2, g2) in itertools.combinations(groups, 2):
        if g1.n != g2.n:
            continue
        if iso_invariants(g1) != iso_invariants(g2):
            continue
        assert find_isomorphism(g1, g2) is None, f"{n1} ~ {n2}"


@given(st.integers(1, 20))
def test_cyclic_group_orders(n):
    g = cyclic_group(n)
    assert validate_group(g).ok
    assert g.element_order(1 % n) == n
    assert g.exponent() == n


def test_validate_catches_broken_table():
    table = [[0, 1], [1, 1]]  # not a latin square
    report = validate_group(GroupTable(table))
    assert not report.ok


def test_dihedral_properties():
    d4 = dihedral_group(4)
    assert d4.n == 8
    assert not d4.is_abelian()
    assert len(d4.center()) == 2
    assert len(d4.conjugacy_classes()) == 5


def test_s3_structure(catalog):
    s3 = catalog["s3"]
    assert not s3.is_abelian()
    classes = s3.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    # even elements (the rotation subgroup) are indices 0, 2, 4
    assert subgroup_closure(s3, [2]) == [0, 2, 4]
    assert is_normal(s3, (0, 2, 4))
    assert sorted(normal_subgroups(s3)) == [
        (0,), (0, 1, 2, 3, 4, 5), (0, 2, 4)]


def test_q8_structure(catalog):
    q8 = catalog["q8"]
    assert len(q8.center()) == 2
    assert len(q8.conjugacy_classes()) == 5
    orders = sorted(q8.element_orders())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    # every subgroup of q8 is normal
    assert sorted(all_subgroups(q8)) == sorted(normal_subgroups(q8))


@pytest.mark.parametrize("name,count", [
    ("z2xz2xz2xz2", 67),
    ("s4", 30),
    ("d4", 10),
    ("q8", 6),
    ("z6", 4),
])
def test_subgroup_counts(catalog, name, count):
    assert len(all_subgroups(catalog[name])) == count


def test_subgroup_table_reindexes(catalog):
    s3 = catalog["s3"]
    sub, embedding = subgroup_table(s3, (0, 2, 4))
    assert sub.n == 3
    assert validate_group(sub).ok
    assert find_isomorphism(sub, cyclic_group(3)) is not None
    assert [embedding[i] for i in range(3)] == [0, 2, 4]


def test_quotient_s4_by_v4_is_s3(catalog):
    s4 = catalog["s4"]
    v4 = next(h for h in normal_subgroups(s4)
              if len(h) == 4)
    quot, coset_of = quotient_group(s4, v4)
    assert quot.n == 6
    assert find_isomorphism(quot, catalog["s3"]) is not None
    assert len(coset_of) == 24


def test_quotient_requires_normal(catalog):
    s3 = catalog["s3"]
    with pytest.raises(Exception):
        quotient_group(s3, (0, 1))  # order-2 subgroup is not normal


def test_direct_product_order_and_commutativity():
    g = direct_product(cyclic_group(3), cyclic_group(5))
    assert g.n == 15
    assert g.is_abelian()
    assert find_isomorphism(g, cyclic_group(15)) is not None


def test_metacyclic_constraints():
    with pytest.raises(ValueError):
        metacyclic_group(5, 2, 0, 2)  # 2^2 = 4 != 1 mod 5


def test_permutation_group_from_generators():
    s3 = permutation_group([(1, 0, 2), (0, 2, 1)])
    assert s3.n == 6
    assert find_isomorphism(s3, dihedral_group(3)) is not None


def test_find_isomorphism_returns_valid_map(catalog):
    d6 = catalog["d6"]
    alt = direct_product(cyclic_group(2), dihedral_group(3))
    iso = find_isomorphism(d6, alt)
    assert iso is not None
    for a in range(d6.n):
        for b in range(d6.n):
            assert iso[d6.mul(a, b)] == alt.mul(iso[a], iso[b])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_direct_product_of_cyclics(a, b):
    import math

    g = direct_product(cyclic_group(a), cyclic_group(b))
    assert validate_group(g).ok
    assert g.is_abelian()
    assert g.exponent() == math.lcm(a, b)
