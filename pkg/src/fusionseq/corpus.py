"""Bundled data set and batch certification drivers.

The package ships canonical groups, rings, and modules under
``data/``; extension and Deligne sequences are generated from them on
demand.  ``run_corpus`` certifies every case, tallies agreement
between the two exactness criteria, and optionally stresses the
detector with single-point mutations (deleting one simple from iota's
image, or rerouting one F column).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io as fio
from .errors import CrossCheckError, FusionSeqError, InvalidDataError
from .groups import GroupTable, normal_subgroups
from .modules import BasedModule, one_object_module
from .perron import DEFAULT_TOL
from .rational import format_fraction
from .rings import FusionRing, trivial_ring
from .sequences import (
    SequenceData,
    check_exact,
    extension_sequence,
    make_deligne_sequence,
    validate_sequence,
)

CORPUS_ENV = "FUSIONSEQ_CORPUS"

# module name -> partner ring name for the generated Deligne cases
DELIGNE_PAIRS = (
    ("fib_regular", "fib"),
    ("fib_regular", "trivial"),
    ("fib_regular", "repz2"),
    ("ising_regular", "repz3"),
    ("ising_regular", "trivial"),
    ("reps3_vec", "fib"),
    ("reps3_vec", "reps3"),
    ("repz2_vec", "ising"),
    ("vecz3_regular", "repz2"),
    ("vecz3_regular", "vecs3"),
)


def corpus_dir() -> Path:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def _load_dir(subdir: str, loader) -> dict:
    base = corpus_dir() / subdir
    if not base.is_dir():
        return {}
    return {p.stem: loader(str(p)) for p in sorted(base.glob("*.json"))}


def bundled_groups() -> dict[str, GroupTable]:
    return _load_dir("groups", fio.load_group)


def bundled_rings() -> dict[str, FusionRing]:
    return _load_dir("rings", fio.load_ring)


def bundled_modules() -> dict[str, BasedModule]:
    return _load_dir("modules", fio.load_module)


@dataclass
class CorpusCase:
    case_id: str
    sequence: SequenceData
    expect: str | None = None  # "exact" / "not_exact" when known a priori


def extension_cases(groups: dict[str, GroupTable] | None = None,
                    max_order: int | None = None) -> list[CorpusCase]:
    """One case per (bundled group, normal subgroup) pair; quotient and
    subgroup representation rings share a splitting prime."""
    if groups is None:
        groups = bundled_groups()
    cases = []
    for name in sorted(groups):
        g = groups[name]
        if max_order is not None and g.n > max_order:
            continue
        for elems in normal_subgroups(g):
            cid = f"ext-{name}-" + ".".join(str(e) for e in elems)
            seq = extension_sequence(g, elems, name=cid)
            cases.append(CorpusCase(cid, seq, expect="exact"))
    return cases


def deligne_cases(rings: dict[str, FusionRing] | None = None,
                  modules: dict[str, BasedModule] | None = None
                  ) -> list[CorpusCase]:
    if rings is None:
        rings = bundled_rings()
    if modules is None:
        modules = bundled_modules()
    cases = []
    for mod_name, c_name in DELIGNE_PAIRS:
        if mod_name not in modules or c_name not in rings:
            continue
        module = modules[mod_name]
        cid = f"del-{mod_name}-{c_name}"
        seq = make_deligne_sequence(module.ring, rings[c_name], module,
                                    name=cid)
        cases.append(CorpusCase(cid, seq, expect="exact"))
    return sorted(cases, key=lambda c: c.case_id)


def undersized_base_case(groups: dict[str, GroupTable] | None = None
                         ) -> CorpusCase | None:
    """Restriction Rep(S3) -> Rep(A3) with the base wrongly declared as
    the trivial ring: still surjective and normal, but the kernel has
    two simples against one in iota's image and alpha = 6/(1*3) = 2."""
    if groups is None:
        groups = bundled_groups()
    if "s3" not in groups:
        return None
    g = groups["s3"]
    normal = next(e for e in normal_subgroups(g) if len(e) == 3)
    ext = extension_sequence(g, normal)
    a = trivial_ring()
    module = one_object_module(a, (1,))
    iota = np.zeros((ext.b.rank, 1), dtype=np.int64)
    iota[ext.b.unit][0] = 1
    seq = SequenceData(a, ext.b, ext.c, module, iota, ext.f,
                       name="neg-s3-undersized-base")
    return CorpusCase("neg-s3-undersized-base", seq, expect="not_exact")


def all_cases(max_order: int | None = None) -> list[CorpusCase]:
    groups = bundled_groups()
    cases = extension_cases(groups, max_order=max_order)
    cases += deligne_cases()
    neg = undersized_base_case(groups)
    if neg is not None:
        cases.append(neg)
    return sorted(cases, key=lambda c: c.case_id)


# --- mutations ---


def delete_iota_simple(seq: SequenceData, idx: int) -> SequenceData:
    """Remove one non-unit simple from A (and from iota's image).  The
    remaining basis must stay closed under fusion and duals, otherwise
    the result would not be a based ring at all."""
    a = seq.a
    if idx in a.unit_components:
        raise InvalidDataError("cannot delete a unit component")
    if a.dual[idx] != idx:
        raise InvalidDataError("remaining basis not closed under duals")
    keep = [j for j in range(a.rank) if j != idx]
    n = np.asarray(a.N)
    if n[np.ix_(keep, keep, [idx])].any():
        raise InvalidDataError("remaining basis not closed under fusion")
    remap = {j: t for t, j in enumerate(keep)}
    sub_n = n[np.ix_(keep, keep, keep)]
    dual = [remap[a.dual[j]] for j in keep]
    labels = None if a.labels is None else [a.labels[j] for j in keep]
    if a.is_multifusion:
        kwargs = {"unit_components": [remap[c] for c in a.unit_components]}
    else:
        kwargs = {"unit": remap[a.unit]}
    sub = FusionRing(sub_n, dual=dual, labels=labels, **kwargs)
    module = BasedModule(sub, np.asarray(seq.module.a)[keep],
                         labels=seq.module.labels)
    iota = np.asarray(seq.iota)[:, keep]
    return SequenceData(sub, seq.b, seq.c, module, iota, seq.f,
                        name=f"{seq.name}-del{idx}")


def reroute_f_column(seq: SequenceData, src: int, dst: int) -> SequenceData:
    """Replace F's column for B-simple src by the column for dst."""
    f = np.asarray(seq.f).copy()
    f[:, src] = f[:, dst]
    return SequenceData(seq.a, seq.b, seq.c, seq.module, seq.iota, f,
                        name=f"{seq.name}-reroute{src}from{dst}")


def _reroute_pairs(seq: SequenceData, limit: int) -> list[tuple[int, int]]:
    f = np.asarray(seq.f)
    rank_b = f.shape[1]
    pairs = []
    for offset in range(1, rank_b):
        for src in range(rank_b):
            dst = (src + offset) % rank_b
            if not np.array_equal(f[:, src], f[:, dst]):
                pairs.append((src, dst))
            if len(pairs) == limit:
                return pairs
    return pairs


@dataclass
class MutationRow:
    mutant_id: str
    kind: str            # "iota-del" | "f-reroute"
    status: str          # "flipped" | "rejected" | "undecided" | "exact"
    detail: str
    kernel_and_normal: bool | None = None
    alpha_is_one: bool | None = None


def run_mutation(case: CorpusCase, kind: str, build,
                 tol=DEFAULT_TOL) -> MutationRow:
    try:
        mutant = build()
    except FusionSeqError as exc:
        return MutationRow(f"{case.case_id}:{kind}", kind, "rejected",
                           f"construction: {exc}")
    report_v = validate_sequence(mutant)
    if not report_v.ok:
        codes = sorted({v.code for v in report_v.violations})
        return MutationRow(mutant.name or case.case_id, kind, "rejected",
                           "validation: " + ",".join(codes))
    report = check_exact(mutant, tol=tol)
    kn = report.kernel_matches_iota and report.normal
    if report.verdict == "exact":
        status = "exact"
    elif report.verdict == "not_exact":
        status = "flipped"
    else:
        status = "undecided"
    return MutationRow(mutant.name or case.case_id, kind, status,
                       report.reason, kernel_and_normal=kn,
                       alpha_is_one=report.alpha_is_one)


def corpus_mutations(cases: list[CorpusCase], min_count: int = 200,
                     tol=DEFAULT_TOL) -> list[MutationRow]:
    """Deterministic single-point mutations over the whole corpus:
    every deletable iota simple, plus rerouted F columns, topped up
    until at least min_count mutants exist."""
    rows = []
    for case in cases:
        seq = case.sequence
        for idx in range(seq.a.rank):
            if idx in seq.a.unit_components:
                continue
            rows.append(run_mutation(
                case, "iota-del",
                lambda s=seq, i=idx: delete_iota_simple(s, i), tol=tol))
    limit = 1
    while True:
        count_before = len(rows)
        for case in cases:
            pairs = _reroute_pairs(case.sequence, limit)
            if len(pairs) < limit:
                continue
            src, dst = pairs[limit - 1]
            rows.append(run_mutation(
                case, "f-reroute",
                lambda s=case.sequence, a=src, b=dst: reroute_f_column(
                    s, a, b), tol=tol))
        if len(rows) >= min_count or len(rows) == count_before:
            break
        limit += 1
    return rows


# --- batch driver ---


@dataclass
class CaseRow:
    case_id: str
    verdict: str
    reason: str
    surjective: bool
    kernel_and_normal: bool
    alpha_is_one: bool | None
    alpha_lo: Fraction
    alpha_hi: Fraction
    alpha_exact: Fraction | None
    agreement: bool | None   # None when alpha is undecided
    seconds: float


@dataclass
class CorpusSummary:
    rows: list[CaseRow] = field(default_factory=list)
    mutation_rows: list[MutationRow] = field(default_factory=list)
    cross_check_failures: list[str] = field(default_factory=list)
    expectation_failures: list[str] = field(default_factory=list)
    total_seconds: float = 0.0

    @property
    def n_cases(self) -> int:
        return len(self.rows)

    @property
    def n_exact(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "exact")

    @property
    def n_not_exact(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "not_exact")

    @property
    def n_undecided(self) -> int:
        return sum(1 for r in self.rows if r.verdict == "undecided")

    @property
    def decidable_agreements(self) -> tuple[int, int]:
        """(agreeing, decidable) over corpus rows plus valid mutants."""
        agree = total = 0
        for r in self.rows:
            if r.agreement is not None:
                total += 1
                agree += int(r.agreement)
        for m in self.mutation_rows:
            if m.alpha_is_one is not None and m.kernel_and_normal is not None:
                total += 1
                agree += int(m.kernel_and_normal == m.alpha_is_one)
        return agree, total

    @property
    def mutation_kill_rate(self) -> float | None:
        if not self.mutation_rows:
            return None
        killed = sum(1 for m in self.mutation_rows
                     if m.status in ("flipped", "rejected"))
        return killed / len(self.mutation_rows)

    @property
    def surviving_mutants(self) -> list[MutationRow]:
        return [m for m in self.mutation_rows
                if m.status not in ("flipped", "rejected")]

    @property
    def ok(self) -> bool:
        agree, total = self.decidable_agreements
        return (not self.cross_check_failures
                and not self.expectation_failures
                and agree == total)


def certify_case(case: CorpusCase, tol=DEFAULT_TOL) -> CaseRow:
    start = time.perf_counter()
    report = check_exact(case.sequence, tol=tol)
    elapsed = time.perf_counter() - start
    kn = report.kernel_matches_iota and report.normal
    agreement = None
    if report.alpha_is_one is not None:
        agreement = kn == report.alpha_is_one
    return CaseRow(
        case_id=case.case_id,
        verdict=report.verdict,
        reason=report.reason,
        surjective=report.surjective,
        kernel_and_normal=kn,
        alpha_is_one=report.alpha_is_one,
        alpha_lo=report.alpha.lo,
        alpha_hi=report.alpha.hi,
        alpha_exact=report.alpha_exact,
        agreement=agreement,
        seconds=elapsed,
    )


def run_corpus(tol=DEFAULT_TOL, max_order: int | None = None,
               case_filter: str | None = None,
               mutations: bool = False,
               min_mutations: int = 200) -> CorpusSummary:
    start = time.perf_counter()
    cases = all_cases(max_order=max_order)
    if case_filter is not None:
        cases = [c for c in cases if case_filter in c.case_id]
    summary = CorpusSummary()
    for case in cases:
        try:
            row = certify_case(case, tol=tol)
        except CrossCheckError as exc:
            summary.cross_check_failures.append(f"{case.case_id}: {exc}")
            continue
        summary.rows.append(row)
        if case.expect is not None and row.verdict != case.expect:
            summary.expectation_failures.append(
                f"{case.case_id}: expected {case.expect}, got {row.verdict}")
    if mutations and cases:
        summary.mutation_rows = corpus_mutations(
            cases, min_count=min_mutations, tol=tol)
    summary.total_seconds = time.perf_counter() - start
    return summary


def summary_to_obj(summary: CorpusSummary) -> dict:
    agree, total = summary.decidable_agreements
    obj = {
        "cases": [
            {
                "case_id": r.case_id,
                "verdict": r.verdict,
                "reason": r.reason,
                "surjective": r.surjective,
                "kernel_and_normal": r.kernel_and_normal,
                "alpha_is_one": r.alpha_is_one,
                "alpha_lo": format_fraction(r.alpha_lo),
                "alpha_hi": format_fraction(r.alpha_hi),
                "alpha_exact": (None if r.alpha_exact is None
                                else format_fraction(r.alpha_exact)),
                "agreement": r.agreement,
            }
            for r in summary.rows
        ],
        "tally": {
            "n_cases": summary.n_cases,
            "n_exact": summary.n_exact,
            "n_not_exact": summary.n_not_exact,
            "n_undecided": summary.n_undecided,
            "criterion_agreement": f"{agree}/{total}",
            "cross_check_failures": summary.cross_check_failures,
            "expectation_failures": summary.expectation_failures,
        },
    }
    if summary.mutation_rows:
        obj["mutations"] = {
            "count": len(summary.mutation_rows),
            "kill_rate": f"{summary.mutation_kill_rate:.4f}",
            "survivors": [
                {"mutant_id": m.mutant_id, "kind": m.kind,
                 "status": m.status, "detail": m.detail}
                for m in summary.surviving_mutants
            ],
        }
    obj["total_seconds"] = round(summary.total_seconds, 3)
    return obj
