"""Fusion ring construction, validation, and canonical examples."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionseq.errors import InvalidDataError
from fusionseq.rings import (
    FusionRing,
    GrothendieckElement,
    deligne_product,
    fibonacci_ring,
    ising_ring,
    left_mult_matrix,
    opposite_ring,
    trivial_ring,
    validate_ring,
)

RING_NAMES = ["trivial", "fib", "ising", "repz2", "repz3", "reps3",
              "repq8", "vecz2", "vecz3", "vecs3"]


def test_trivial_ring():
    ring = trivial_ring()
    assert ring.rank == 1
    assert validate_ring(ring).ok


def test_fibonacci_structure():
    ring = fibonacci_ring()
    assert ring.rank == 2
    # tau * tau = 1 + tau
    assert ring.N[1][1][0] == 1 and ring.N[1][1][1] == 1
    assert ring.dual == (0, 1)
    assert validate_ring(ring).ok


def test_ising_structure():
    ring = ising_ring()
    assert ring.rank == 3
    # basis (1, s, p): s * s = 1 + p, s * p = s, p * p = 1
    sigma, psi = 1, 2
    assert ring.N[sigma][sigma][0] == 1
    assert ring.N[sigma][sigma][psi] == 1
    assert ring.N[sigma][sigma][sigma] == 0
    assert ring.N[psi][psi][0] == 1
    assert validate_ring(ring).ok


def test_all_bundled_rings_valid(rings):
    assert sorted(rings) == sorted(RING_NAMES)
    for name, ring in rings.items():
        report = validate_ring(ring)
        assert report.ok, f"{name}: {[v.message for v in report.violations]}"


@pytest.mark.parametrize("mutator,code", [
    (lambda n: n.__setitem__((1, 1, 0), -1), "negative-entry"),
    (lambda n: n.__setitem__((0, 1, 1), 0), "unit-law"),
    (lambda n: n.__setitem__((1, 1, 0), 2), "frobenius-unit"),
])
def test_validator_catches_broken_axioms(mutator, code):
    n = np.array(fibonacci_ring().N, dtype=np.int64).copy()
    mutator(n)
    ring = FusionRing(n, dual=(0, 1), unit=0)
    report = validate_ring(ring)
    assert not report.ok
    assert any(v.code == code for v in report.violations), \
        f"expected {code}, got {[v.code for v in report.violations]}"


def test_validator_catches_non_associativity(rings):
    # corrupt sgn (x) V in Rep(S3): (sgn sgn) V = V but sgn (sgn V) = 4V
    n = np.array(rings["reps3"].N, dtype=np.int64).copy()
    n[1][2][2] = 2
    ring = FusionRing(n, dual=(0, 1, 2), unit=0)
    report = validate_ring(ring)
    codes = {v.code for v in report.violations}
    assert "associativity" in codes


def test_validator_catches_bad_dual():
    ring = FusionRing(fibonacci_ring().N, dual=(1, 0), unit=0)
    report = validate_ring(ring)
    assert not report.ok


def test_frobenius_symmetry_checked():
    # vec(z3) with a broken coefficient violates frobenius symmetry
    n = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            n[i][j][(i + j) % 3] = 1
    ring = FusionRing(n, dual=(0, 2, 1), unit=0)
    assert validate_ring(ring).ok


def test_unit_vector_and_semisimple():
    ring = fibonacci_ring()
    assert list(ring.unit_vector()) == [1, 0]
    assert ring.is_semisimple()


def test_left_mult_matrix():
    ring = fibonacci_ring()
    m = left_mult_matrix(ring, (0, 1))
    # column j of L_tau holds tau * x_j in the basis
    assert m[0][1] == 1 and m[1][1] == 1 and m[1][0] == 1 and m[0][0] == 0
    assert np.array_equal(np.array(m, dtype=np.int64),
                          np.asarray(ring.basis_left_mult(1), dtype=np.int64))


def test_grothendieck_element_arithmetic():
    ring = fibonacci_ring()
    tau = GrothendieckElement(ring, (0, 1))
    sq = tau * tau
    assert sq.coeffs == (1, 1)
    assert (tau + tau).coeffs == (0, 2)
    assert (sq - tau).coeffs == (1, 0)


def test_digest_stable_and_equality(rings):
    fib = fibonacci_ring()
    assert fib == fibonacci_ring()
    assert fib.digest == fibonacci_ring().digest
    assert fib != rings["ising"]


def test_opposite_ring_is_involution(rings):
    for name, ring in rings.items():
        opp = opposite_ring(ring)
        assert validate_ring(opp).ok, name
        assert opposite_ring(opp) == ring, name


def test_opposite_of_commutative_is_identity():
    fib = fibonacci_ring()
    assert opposite_ring(fib) == fib


@given(st.sampled_from(RING_NAMES), st.sampled_from(RING_NAMES))
@settings(max_examples=25, deadline=None)
def test_deligne_product_valid(rings, name1, name2):
    prod = deligne_product(rings[name1], rings[name2])
    assert prod.rank == rings[name1].rank * rings[name2].rank
    assert validate_ring(prod).ok


def test_deligne_index_convention():
    fib = fibonacci_ring()
    ising = ising_ring()
    prod = deligne_product(fib, ising)
    # pair (i, j) sits at index i * rank(second) + j
    assert prod.unit == fib.unit * ising.rank + ising.unit
    i, j = 1, 2
    a, b = 1, 2
    k, l = 1, 1
    assert prod.N[i * 3 + j][a * 3 + b][k * 3 + l] == (
        fib.N[i][a][k] * ising.N[j][b][l])


def test_deligne_with_multifusion_tracks_unit_components():
    from fusionseq.modules import end_ring, regular_module

    e = end_ring(regular_module(fibonacci_ring()))
    prod = deligne_product(fibonacci_ring(), e)
    assert prod.is_multifusion
    assert len(prod.unit_components) == len(e.unit_components)
    assert validate_ring(prod).ok


def test_constructor_rejects_malformed_input():
    with pytest.raises(ValueError):
        FusionRing(fibonacci_ring().N, dual=(0, 1), unit=0,
                   unit_components=(0,))
    with pytest.raises(ValueError):
        FusionRing(np.zeros((2, 2), dtype=np.int64), dual=(0, 1), unit=0)
    with pytest.raises(TypeError):
        FusionRing(np.zeros((2, 2, 2)), dual=(0, 1), unit=0)


def test_dual_length_mismatch_flagged_by_validator():
    ring = FusionRing([[[1]]], dual=(0, 1), unit=0)
    report = validate_ring(ring)
    assert any(v.code == "dual-range" for v in report.violations)
