"""Command-line front end: validation, FPdim computation, canonical
constructions, and exactness certification with machine-readable JSON
output.

Exit codes: 0 success / exact, 1 invalid data or not exact, 2 parse or
input errors, 3 undecided at the requested tolerance, 4 cross-check
invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import corpus as corpus_mod
from . import io as fio
from .characters import rep_g_fusion, vec_g_ring
from .errors import (
    CrossCheckError,
    FusionSeqError,
    InvalidDataError,
    ParseError,
    PrecisionError,
)
from .fpdim import dims_intervals, fpdim_category
from .groups import is_normal, validate_group
from .modules import end_ring, module_fpdims, validate_module
from .perron import DEFAULT_MAX_ITER, DEFAULT_TOL, perron_eigen
from .rational import format_fraction, to_fraction
from .rings import validate_ring
from .sequences import check_exact, extension_sequence, make_deligne_sequence
from .sequences import validate_sequence

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_UNDECIDED = 3
EXIT_BREACH = 4


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--tol", default=None,
                        help="certification tolerance as a rational "
                        "string (default 1/1000000000000)")
    parser.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                        help="iteration cap for eigenvalue refinement")
    parser.add_argument("--format", choices=("json", "human"),
                        default="json", help="output format")
    parser.add_argument("--output", default=None,
                        help="write the report to a file instead of stdout")


def _tol(args) -> Fraction:
    if args.tol is None:
        return DEFAULT_TOL
    try:
        t = to_fraction(args.tol)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad --tol value: {exc}") from exc
    if t <= 0:
        raise ParseError("--tol must be positive")
    return t


def _write_text(text: str, args):
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(obj: dict, args, human_lines=None):
    if args.format == "human" and human_lines is not None:
        _write_text("\n".join(human_lines) + "\n", args)
    else:
        _write_text(fio.dumps_stable(obj), args)


def _interval_entry(lo: Fraction, hi: Fraction) -> dict:
    return {
        "lo": format_fraction(lo),
        "hi": format_fraction(hi),
        "exact": format_fraction(lo) if lo == hi else None,
    }


def _fmt_interval(entry: dict) -> str:
    if entry["exact"] is not None:
        return f"{entry['exact']} (exact)"
    approx = float(to_fraction(entry["lo"]))
    return f"[{entry['lo']}, {entry['hi']}] ~ {approx:.12g}"


# --- subcommands ---


def cmd_validate(args) -> int:
    schema, payload = fio.load_any(args.path)
    if schema == "ring":
        report = validate_ring(payload)
    elif schema == "module":
        report = validate_module(payload)
    elif schema == "group":
        report = validate_group(payload)
    elif schema == "sequence":
        report = validate_sequence(payload)
    else:  # matrix: structural checks only
        from .validation import ValidationReport

        report = ValidationReport("matrix")
        n = len(payload)
        for i, row in enumerate(payload):
            if len(row) != n:
                report.add("not-square", (i,), f"row {i} has {len(row)} "
                           f"entries, expected {n}")
            for j, x in enumerate(row):
                if x < 0:
                    report.add("negative-entry", (i, j), f"entry {x} < 0")
    obj = report.to_json()
    lines = [f"subject: {obj['subject']}", f"valid: {obj['ok']}"]
    lines += [f"  {v['code']} at {tuple(v['where'])}: {v['message']}"
              for v in obj["violations"]]
    _emit(obj, args, lines)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_fpdim(args) -> int:
    schema, payload = fio.load_any(args.path)
    tol = _tol(args)
    if schema == "ring":
        report = validate_ring(payload)
        if not report.ok:
            _emit(report.to_json(), args,
                  [f"invalid ring: {len(report.violations)} violations"])
            return EXIT_INVALID
        dims = dims_intervals(payload, tol)
        cat = fpdim_category(payload, tol)
        obj = {
            "kind": "ring",
            "rank": payload.rank,
            "dims": [_interval_entry(iv.lo, iv.hi) for iv in dims],
            "category": _interval_entry(cat.lo, cat.hi),
        }
        labels = payload.labels or [f"x{i}" for i in range(payload.rank)]
        lines = [f"FPdim({lab}) = {_fmt_interval(e)}"
                 for lab, e in zip(labels, obj["dims"])]
        lines.append(f"FPdim(category) = {_fmt_interval(obj['category'])}")
        _emit(obj, args, lines)
        return EXIT_OK
    if schema == "module":
        report = validate_module(payload)
        if not report.ok:
            _emit(report.to_json(), args,
                  [f"invalid module: {len(report.violations)} violations"])
            return EXIT_INVALID
        data = module_fpdims(payload, tol)
        obj = {
            "kind": "module",
            "mrank": payload.mrank,
            "dims": [_interval_entry(iv.lo, iv.hi) for iv in data.dims],
            "scale": _interval_entry(data.scale.lo, data.scale.hi),
        }
        labels = payload.labels or [f"m{i}" for i in range(payload.mrank)]
        lines = [f"FPdim({lab}) = {_fmt_interval(e)}"
                 for lab, e in zip(labels, obj["dims"])]
        lines.append(f"scale = {_fmt_interval(obj['scale'])}")
        _emit(obj, args, lines)
        return EXIT_OK
    raise ParseError(f"fpdim expects a ring or module file, got {schema!r}")


def cmd_perron(args) -> int:
    schema, payload = fio.load_any(args.path)
    if schema != "matrix":
        raise ParseError(f"perron expects a matrix file, got {schema!r}")
    tol = _tol(args)
    result = perron_eigen(payload, tol=tol, max_iter=args.max_iter)
    obj = {
        "kind": "perron",
        "lo": format_fraction(result.lo),
        "hi": format_fraction(result.hi),
        "exact_integer": (None if result.exact_integer is None
                          else int(result.exact_integer)),
        "eigvec": [format_fraction(x) for x in result.eigvec],
    }
    lines = [f"lambda in [{obj['lo']}, {obj['hi']}]"]
    if obj["exact_integer"] is not None:
        lines.append(f"lambda = {obj['exact_integer']} (exact integer)")
    _emit(obj, args, lines)
    return EXIT_OK


def _parse_normal(text: str) -> tuple[int, ...]:
    try:
        elems = sorted({int(x) for x in text.split(",") if x.strip() != ""})
    except ValueError as exc:
        raise ParseError(f"bad --normal list: {exc}") from exc
    if not elems:
        raise ParseError("--normal must list at least the identity")
    return tuple(elems)


def cmd_make(args) -> int:
    if args.construction == "vecg":
        g = fio.load_group(args.group)
        validate_group(g).raise_if_invalid()
        obj = fio.ring_to_obj(vec_g_ring(g))
    elif args.construction == "repg":
        g = fio.load_group(args.group)
        validate_group(g).raise_if_invalid()
        obj = fio.ring_to_obj(rep_g_fusion(g).ring)
    elif args.construction == "extension":
        g = fio.load_group(args.group)
        validate_group(g).raise_if_invalid()
        elems = _parse_normal(args.normal)
        if any(e < 0 or e >= g.n for e in elems):
            raise InvalidDataError("--normal indices out of range")
        if not is_normal(g, elems):
            raise InvalidDataError(
                f"elements {list(elems)} are not a normal subgroup")
        seq = extension_sequence(g, elems)
        obj = fio.sequence_to_obj(seq)
    elif args.construction == "deligne":
        a = fio.load_ring(args.a)
        c = fio.load_ring(args.c)
        module = fio.load_module(args.module)
        if module.ring.digest != a.digest:
            raise InvalidDataError("--module is not a module over --a")
        seq = make_deligne_sequence(a, c, module)
        obj = fio.sequence_to_obj(seq)
    else:  # end
        module = fio.load_module(args.module)
        validate_module(module).raise_if_invalid()
        obj = fio.ring_to_obj(end_ring(module))
    _emit(obj, args)
    return EXIT_OK


def cmd_check_exact(args) -> int:
    seq = fio.load_sequence(args.path)
    report_v = validate_sequence(seq)
    if not report_v.ok:
        obj = report_v.to_json()
        lines = [f"invalid sequence: {len(report_v.violations)} violations"]
        lines += [f"  {v.code} at {v.where}: {v.message}"
                  for v in report_v.violations]
        _emit(obj, args, lines)
        return EXIT_PARSE
    report = check_exact(seq, tol=_tol(args))
    obj = fio.exactness_report_to_obj(report)
    lines = [f"verdict: {obj['verdict']}", f"reason: {obj['reason']}",
             f"kernel: {obj['kernel']}  iota image: {obj['iota_image']}",
             f"surjective: {obj['surjective']}  normal: {obj['normal']}",
             f"alpha in [{obj['alpha_lo']}, {obj['alpha_hi']}]"
             f"  ({obj['alpha_provenance']})"]
    if obj["alpha_exact"] is not None:
        lines.append(f"alpha = {obj['alpha_exact']} (exact)")
    _emit(obj, args, lines)
    if report.verdict == "exact":
        return EXIT_OK
    if report.verdict == "not_exact":
        return EXIT_INVALID
    return EXIT_UNDECIDED


def cmd_corpus(args) -> int:
    summary = corpus_mod.run_corpus(
        tol=_tol(args),
        max_order=args.max_order,
        case_filter=args.case,
        mutations=args.run_all,
        min_mutations=args.min_mutations,
    )
    if not summary.rows and not summary.cross_check_failures:
        sys.stderr.write(
            f"no corpus cases found under {corpus_mod.corpus_dir()}\n")
        return EXIT_PARSE
    obj = corpus_mod.summary_to_obj(summary)
    lines = [
        f"{r['case_id']:44s} {r['verdict']:10s} "
        f"agree={r['agreement']}" for r in obj["cases"]
    ]
    tally = obj["tally"]
    lines.append(
        f"cases={tally['n_cases']} exact={tally['n_exact']} "
        f"not_exact={tally['n_not_exact']} undecided={tally['n_undecided']} "
        f"agreement={tally['criterion_agreement']}")
    if "mutations" in obj:
        lines.append(
            f"mutations={obj['mutations']['count']} "
            f"kill_rate={obj['mutations']['kill_rate']} "
            f"survivors={len(obj['mutations']['survivors'])}")
    lines.append(f"total_seconds={obj['total_seconds']}")
    _emit(obj, args, lines)
    if summary.cross_check_failures:
        for failure in summary.cross_check_failures:
            sys.stderr.write(f"cross-check breach: {failure}\n")
        return EXIT_BREACH
    return EXIT_OK if summary.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionseq",
        description="Fusion rings, certified Frobenius-Perron dimensions, "
        "and exactness certification of based-ring sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a data file")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("fpdim", help="certified FPdims of a ring or module")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=cmd_fpdim)

    p = sub.add_parser("perron",
                       help="certified Perron eigenvalue of a matrix file")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=cmd_perron)

    p = sub.add_parser("make", help="canonical constructions")
    make_sub = p.add_subparsers(dest="construction", required=True)
    for name, opts in (
        ("vecg", ("--group",)),
        ("repg", ("--group",)),
        ("deligne", ("--a", "--c", "--module")),
        ("extension", ("--group", "--normal")),
        ("end", ("--module",)),
    ):
        q = make_sub.add_parser(name)
        for opt in opts:
            q.add_argument(opt, required=True)
        _add_common(q)
        q.set_defaults(func=cmd_make)

    p = sub.add_parser("check-exact",
                       help="certify exactness of a sequence file")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=cmd_check_exact)

    p = sub.add_parser("corpus", help="certify the bundled corpus")
    p.add_argument("--run-all", action="store_true",
                   help="include the mutation stress test")
    p.add_argument("--case", default=None,
                   help="only run case ids containing this substring")
    p.add_argument("--max-order", type=int, default=None,
                   help="skip extension cases for groups above this order")
    p.add_argument("--min-mutations", type=int, default=200)
    _add_common(p)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CrossCheckError as exc:
        sys.stderr.write(f"cross-check breach: {exc}\n")
        return EXIT_BREACH
    except PrecisionError as exc:
        sys.stderr.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except (InvalidDataError, FusionSeqError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
