"""Tests for exactness certification of sequences A -> B -> C (x) End(M).

The group extension Rep(Z2) -> Rep(S3) -> Rep(Z3) is small enough to
check against frozen matrices computed by hand, and the canonical
product sequences exercise the interval-arithmetic side of the alpha
decision.  Both criteria (kernel + normality versus alpha = 1) are
cross-checked on every decided case.
"""

from fractions import Fraction

import numpy as np
import pytest

from fusionseq import corpus
from fusionseq.errors import CrossCheckError, InvalidDataError
from fusionseq.modules import (
    BasedModule,
    end_ring,
    one_object_module,
    validate_module,
)
from fusionseq.rational import RatInterval
from fusionseq.rings import deligne_product
from fusionseq.sequences import (
    AlphaResult,
    SequenceData,
    check_exact,
    compute_alpha,
    dual_dims_check,
    extension_sequence,
    induced_module,
    induced_module_dims,
    internal_hom_fpdim_check,
    iota_image,
    is_surjective_gr,
    kernel_simples,
    make_deligne_sequence,
    normality_check,
    regular_image_check,
    validate_sequence,
)


A3 = [0, 2, 4]


@pytest.fixture(scope="module")
def s3_ext(catalog):
    return extension_sequence(catalog["s3"], A3)


@pytest.fixture(scope="module")
def fib_deligne(rings, modules):
    return make_deligne_sequence(rings["fib"], rings["repz2"],
                                 modules["fib_regular"])


class TestExtensionOracle:
    """Frozen hand-computed data for Rep(Z2) -> Rep(S3) -> Rep(Z3)."""

    def test_ranks(self, s3_ext):
        assert (s3_ext.a.rank, s3_ext.b.rank, s3_ext.c.rank) == (2, 3, 3)
        assert s3_ext.mrank == 1

    def test_restriction_matrix(self, s3_ext):
        # trivial and sign restrict trivially to A3; the standard
        # representation restricts to the two faithful characters
        assert s3_ext.f.tolist() == [[1, 1, 0], [0, 0, 1], [0, 0, 1]]

    def test_iota_is_inflation(self, s3_ext):
        assert s3_ext.iota.tolist() == [[1, 0], [0, 1], [0, 0]]
        assert iota_image(s3_ext) == (0, 1)

    def test_kernel(self, s3_ext):
        assert kernel_simples(s3_ext) == (0, 1)

    def test_surjective_and_normal(self, s3_ext):
        assert is_surjective_gr(s3_ext)
        assert normality_check(s3_ext)

    def test_alpha_is_exactly_one(self, s3_ext):
        alpha = compute_alpha(s3_ext)
        assert alpha.exact == 1
        assert alpha.interval.lo <= 1 <= alpha.interval.hi
        assert alpha.is_one() is True

    def test_check_exact(self, s3_ext):
        report = check_exact(s3_ext)
        assert report.verdict == "exact"
        assert report.exact
        assert report.kernel_matches_iota
        assert report.normal and report.surjective
        assert report.alpha_exact == 1
        assert report.alpha_provenance == "exact"
        assert report.cross_check is True

    def test_validates(self, s3_ext):
        assert validate_sequence(s3_ext).ok

    @pytest.mark.parametrize("normal", [[0], [0, 1, 2, 3, 4, 5]])
    def test_degenerate_normal_subgroups(self, catalog, normal):
        seq = extension_sequence(catalog["s3"], normal)
        report = check_exact(seq)
        assert report.verdict == "exact"
        assert report.alpha_exact == 1

    def test_non_normal_subgroup_rejected(self, catalog):
        reflection = next(
            x for x in range(6) if catalog["s3"].element_order(x) == 2
        )
        with pytest.raises(InvalidDataError):
            extension_sequence(catalog["s3"], [0, reflection])


class TestUndersizedBase:
    """Same F but A cut down to the trivial ring: alpha = 2, not exact."""

    def test_case_shape(self, catalog):
        case = corpus.undersized_base_case(catalog)
        assert case is not None
        seq = case.sequence
        assert seq.a.rank == 1
        assert iota_image(seq) == (0,)

    def test_not_exact_with_alpha_two(self, catalog):
        seq = corpus.undersized_base_case(catalog).sequence
        report = check_exact(seq)
        assert report.verdict == "not_exact"
        assert "kernel" in report.reason
        assert report.alpha_exact == 2
        assert report.alpha_is_one is False
        assert report.surjective and report.normal
        assert not report.kernel_matches_iota
        # both criteria decided and agreed (both say "not exact")
        assert report.cross_check is True

    def test_regular_image_still_holds(self, catalog):
        # the regular-object identity holds for any surjective F
        seq = corpus.undersized_base_case(catalog).sequence
        assert regular_image_check(seq)


class TestDeligneSequence:
    def test_kernel_is_a_factor(self, fib_deligne):
        assert kernel_simples(fib_deligne) == (0, 2)
        assert iota_image(fib_deligne) == (0, 2)

    def test_exact_via_interval_and_normality(self, fib_deligne):
        report = check_exact(fib_deligne)
        assert report.verdict == "exact"
        assert report.alpha_exact is None
        assert report.alpha_provenance == "interval+normality"
        assert report.cross_check is True
        assert report.alpha.lo <= 1 <= report.alpha.hi

    def test_validates(self, fib_deligne):
        assert validate_sequence(fib_deligne).ok

    def test_wrong_base_ring_rejected(self, rings, modules):
        with pytest.raises(InvalidDataError):
            make_deligne_sequence(rings["ising"], rings["repz2"],
                                  modules["fib_regular"])

    def test_multifusion_factor_rejected(self, rings, modules):
        ends = end_ring(modules["fib_regular"])
        mod = one_object_module(rings["fib"], (1, 1))
        with pytest.raises(InvalidDataError):
            make_deligne_sequence(ends, rings["repz2"], mod)

    def test_decomposable_module_rejected(self, rings, modules):
        reg = modules["fib_regular"]
        r = reg.mrank
        double = np.zeros((reg.ring.rank, 2 * r, 2 * r), dtype=np.int64)
        for i in range(reg.ring.rank):
            double[i][:r, :r] = reg.a[i]
            double[i][r:, r:] = reg.a[i]
        mod = BasedModule(reg.ring, double)
        assert validate_module(mod).ok
        with pytest.raises(InvalidDataError):
            make_deligne_sequence(reg.ring, rings["repz2"], mod)


class TestValidateSequenceNegatives:
    def _mutate(self, seq, iota=None, f=None):
        return SequenceData(seq.a, seq.b, seq.c, seq.module,
                            seq.iota if iota is None else iota,
                            seq.f if f is None else f)

    def _codes(self, seq):
        return [v.code for v in validate_sequence(seq).violations]

    def test_iota_not_basis_vector(self, s3_ext):
        iota = s3_ext.iota.copy()
        iota[2][0] = 1
        assert "iota-column" in self._codes(self._mutate(s3_ext, iota=iota))

    def test_iota_columns_collide(self, s3_ext):
        iota = s3_ext.iota.copy()
        iota[:, 1] = iota[:, 0]
        assert "iota-distinct" in self._codes(self._mutate(s3_ext, iota=iota))

    def test_iota_misses_unit(self, s3_ext):
        iota = np.zeros_like(s3_ext.iota)
        iota[1][0] = 1
        iota[0][1] = 1
        codes = self._codes(self._mutate(s3_ext, iota=iota))
        assert "iota-unit" in codes

    def test_iota_breaks_multiplicativity(self, s3_ext):
        # sending the sign character to the 2-dimensional simple keeps
        # columns distinct but breaks iota(x*x) = iota(x)^2
        iota = np.zeros_like(s3_ext.iota)
        iota[0][0] = 1
        iota[2][1] = 1
        codes = self._codes(self._mutate(s3_ext, iota=iota))
        assert "iota-hom" in codes or "iota-dual" in codes

    def test_f_wrong_shape(self, s3_ext):
        f = np.vstack([s3_ext.f, np.zeros((1, 3), dtype=np.int64)])
        assert "f-shape" in self._codes(self._mutate(s3_ext, f=f))

    def test_f_negative_entry(self, s3_ext):
        f = s3_ext.f.copy()
        f[0][0] = -1
        assert "negative-entry" in self._codes(self._mutate(s3_ext, f=f))

    def test_f_drops_unit(self, s3_ext):
        f = s3_ext.f.copy()
        f[:, 0] = [0, 1, 0]
        codes = self._codes(self._mutate(s3_ext, f=f))
        assert "f-unit" in codes

    def test_f_breaks_multiplicativity(self, s3_ext):
        f = s3_ext.f.copy()
        f[:, 2] = [1, 1, 0]
        codes = self._codes(self._mutate(s3_ext, f=f))
        assert "f-hom" in codes or "composite-action" in codes

    def test_module_over_wrong_ring(self, s3_ext, rings):
        mod = one_object_module(rings["reps3"], (1, 1, 2))
        seq = SequenceData(s3_ext.a, s3_ext.b, s3_ext.c, mod,
                           s3_ext.iota, s3_ext.f)
        assert "module-ring-mismatch" in self._codes(seq)

    def test_multifusion_component_rejected(self, modules):
        ends = end_ring(modules["fib_regular"])
        m = 2
        act = np.zeros((4, m, m), dtype=np.int64)
        for k in range(m):
            for j in range(m):
                act[k * m + j][j][k] = 1
        column = BasedModule(ends, act)
        assert validate_module(column).ok
        seq = SequenceData(ends, ends, ends, column,
                           np.eye(4, dtype=np.int64),
                           np.eye(4, dtype=np.int64))
        codes = self._codes(seq)
        assert any(c.endswith("-multifusion") for c in codes)


class TestDecisionLayers:
    def test_forged_alpha_raises_cross_check(self, catalog, monkeypatch):
        # kernel/normality say "not exact"; forge an exact alpha = 1 so
        # the two decided criteria disagree
        seq = corpus.undersized_base_case(catalog).sequence

        def forged(s, tol=None):
            return AlphaResult(interval=RatInterval.point(1),
                               exact=Fraction(1))

        monkeypatch.setattr("fusionseq.sequences.compute_alpha", forged)
        with pytest.raises(CrossCheckError):
            check_exact(seq)

    def test_wide_interval_is_undecided(self, s3_ext, monkeypatch):
        def vague(s, tol=None):
            return AlphaResult(
                interval=RatInterval(Fraction(995, 1000),
                                     Fraction(1005, 1000)),
                exact=None,
            )

        monkeypatch.setattr("fusionseq.sequences.compute_alpha", vague)
        report = check_exact(s3_ext)
        assert report.verdict == "undecided"
        assert report.alpha_is_one is None
        assert report.alpha_provenance == "undecided"
        assert report.cross_check is None

    def test_tight_interval_needs_normality(self, s3_ext, monkeypatch):
        eps = Fraction(1, 10 ** 12)

        def tight(s, tol=None):
            return AlphaResult(
                interval=RatInterval(1 - eps, 1 + eps), exact=None)

        monkeypatch.setattr("fusionseq.sequences.compute_alpha", tight)
        report = check_exact(s3_ext)
        assert report.verdict == "exact"
        assert report.alpha_provenance == "interval+normality"

    def test_interval_excluding_one_decides_no(self, s3_ext, monkeypatch):
        def off(s, tol=None):
            return AlphaResult(
                interval=RatInterval(Fraction(3, 2), Fraction(2)),
                exact=None,
            )

        monkeypatch.setattr("fusionseq.sequences.compute_alpha", off)
        with pytest.raises(CrossCheckError):
            # structure says exact, interval says alpha != 1
            check_exact(s3_ext)

    def test_alpha_below_one_surjective_rejected(self, s3_ext):
        # doubling the A-factor pushes alpha below 1 while F stays
        # surjective; compute_alpha must refuse to certify that
        big_a = deligne_product(s3_ext.a, s3_ext.a)
        mod = one_object_module(big_a, (1, 1, 1, 1))
        iota = np.zeros((3, 4), dtype=np.int64)
        iota[0][0] = 1
        iota[1][1] = iota[1][2] = 1  # not even injective; irrelevant here
        seq = SequenceData(big_a, s3_ext.b, s3_ext.c, mod, iota, s3_ext.f)
        with pytest.raises(InvalidDataError):
            compute_alpha(seq)


class TestDerivedChecks:
    def test_regular_image_s3(self, s3_ext):
        assert regular_image_check(s3_ext)

    def test_regular_image_deligne(self, fib_deligne):
        assert regular_image_check(fib_deligne)

    def test_regular_image_detects_rerouting(self, s3_ext):
        f = s3_ext.f.copy()
        f[:, 2] = [0, 2, 0]
        broken = SequenceData(s3_ext.a, s3_ext.b, s3_ext.c, s3_ext.module,
                              s3_ext.iota, f)
        assert not regular_image_check(broken)

    def test_internal_hom_extension(self, s3_ext):
        assert internal_hom_fpdim_check(s3_ext, 0, 0)

    def test_internal_hom_deligne_all_pairs(self, fib_deligne):
        m = fib_deligne.mrank
        for j in range(m):
            for k in range(m):
                assert internal_hom_fpdim_check(fib_deligne, j, k)

    def test_internal_hom_bad_index(self, s3_ext):
        with pytest.raises(IndexError):
            internal_hom_fpdim_check(s3_ext, 0, 1)

    def test_induced_module_s3(self, s3_ext):
        mod = induced_module(s3_ext)
        assert mod.mrank == s3_ext.c.rank * s3_ext.mrank
        assert validate_module(mod).ok
        assert induced_module_dims(s3_ext)

    def test_induced_module_deligne(self, fib_deligne):
        mod = induced_module(fib_deligne)
        assert validate_module(mod).ok
        assert induced_module_dims(fib_deligne)

    def test_dual_dims_triple(self, s3_ext, rings):
        assert dual_dims_check(s3_ext, rings["repz2"], rings["reps3"],
                               rings["repz3"])

    def test_dual_dims_mismatch_detected(self, s3_ext, rings):
        assert not dual_dims_check(s3_ext, rings["reps3"], rings["reps3"],
                                   rings["repz3"])


class TestExtensionFamily:
    @pytest.mark.parametrize(
        "gname,gens",
        [
            ("z4", [2]),
            ("q8", [1]),
            ("d4", "center"),
            ("a4", [1, 2, 3]),
            ("z4xz2sz2", "center"),
        ],
    )
    def test_group_extensions_are_exact(self, catalog, gname, gens):
        g = catalog[gname]
        from fusionseq.groups import subgroup_closure

        elems = subgroup_closure(g, g.center() if gens == "center" else gens)
        seq = extension_sequence(g, elems)
        assert validate_sequence(seq).ok
        report = check_exact(seq)
        assert report.verdict == "exact"
        assert report.alpha_exact == 1
        assert report.cross_check is True
