"""Benchmark the compiled kernels against the pure-Python fallback.

Run as ``python3 -m fusionseq.bench``.  Both implementations are timed
in the same process on identical inputs, so the comparison is direct;
results are checked for agreement before any timing is reported.
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from ._kernels import _fallback
from .characters import rep_g_fusion, vec_g_ring
from .groups import group_catalog
from .modules import regular_module
from .rings import deligne_product, fibonacci_ring

try:
    _native = importlib.import_module("fusionseq._kernels._native")
except ImportError:
    _native = None


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _workloads():
    catalog = group_catalog()
    big = vec_g_ring(catalog["z4xz2sz2"])
    rep16 = rep_g_fusion(catalog["d8"]).ring
    fib3 = deligne_product(deligne_product(fibonacci_ring(),
                                           fibonacci_ring()),
                           fibonacci_ring())
    reg = regular_module(big)
    inflate = np.zeros((big.rank, rep16.rank), dtype=np.int64)
    rng = np.random.default_rng(7)
    for j in range(rep16.rank):
        inflate[rng.integers(0, big.rank)][j] = 1

    n16 = np.asarray(big.N, dtype=np.int64)
    nrep = np.asarray(rep16.N, dtype=np.int64)
    nfib = np.asarray(fib3.N, dtype=np.int64)
    areg = np.asarray(reg.a, dtype=np.int64)

    mat = np.asarray(nfib.sum(axis=0), dtype=np.float64)
    v0 = np.ones(mat.shape[0], dtype=np.float64)

    return [
        ("assoc_defect rank-16 group ring",
         lambda k: k.assoc_defect(n16)),
        ("assoc_defect rank-8 fib^3",
         lambda k: k.assoc_defect(nfib)),
        ("module_assoc_defect regular rank-16",
         lambda k: k.module_assoc_defect(n16, areg)),
        ("hom_defect rank-11 -> rank-16",
         lambda k: k.hom_defect(nrep, n16, inflate)),
        ("power_iteration rank-8",
         lambda k: k.power_iteration(mat, v0, 10000, 1e-15)),
    ]


class _FallbackShim:
    """Present the fallback under the same call signatures the native
    module exposes (lists in, plain results out)."""

    @staticmethod
    def assoc_defect(n):
        return _fallback.assoc_defect(n.tolist())

    @staticmethod
    def module_assoc_defect(n, a):
        return _fallback.module_assoc_defect(n.tolist(), a.tolist())

    @staticmethod
    def hom_defect(nb, nt, f):
        return _fallback.hom_defect(nb.tolist(), nt.tolist(), f.tolist())

    @staticmethod
    def power_iteration(m, v0, max_iter, rtol):
        return _fallback.power_iteration(m.tolist(), v0.tolist(),
                                         max_iter, rtol)


def run(repeats: int = 5) -> list[tuple[str, float, float | None]]:
    rows = []
    shim = _FallbackShim()
    for name, call in _workloads():
        fb_result = call(shim)
        fb_time = _time(lambda: call(shim), repeats)
        nat_time = None
        if _native is not None:
            nat_result = call(_native)
            if isinstance(fb_result, tuple):
                vec_f = np.asarray(fb_result[0], dtype=np.float64)
                vec_n = np.asarray(nat_result[0], dtype=np.float64)
                assert np.allclose(vec_f, vec_n, rtol=1e-9), name
            else:
                assert fb_result == nat_result, (
                    f"{name}: fallback={fb_result} native={nat_result}")
            nat_time = _time(lambda: call(_native), repeats)
        rows.append((name, fb_time, nat_time))
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="compare compiled kernels against the pure-Python "
        "fallback")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)
    rows = run(repeats=args.repeats)
    width = max(len(name) for name, _, _ in rows)
    if _native is None:
        print("compiled kernels unavailable; timing fallback only")
    header = f"{'workload':{width}s}  {'fallback':>12s}  {'native':>12s}  speedup"
    print(header)
    print("-" * len(header))
    for name, fb_time, nat_time in rows:
        fb_ms = fb_time * 1e3
        if nat_time is None:
            print(f"{name:{width}s}  {fb_ms:10.3f} ms  {'-':>12s}")
        else:
            nat_ms = nat_time * 1e3
            print(f"{name:{width}s}  {fb_ms:10.3f} ms  {nat_ms:10.3f} ms"
                  f"  {fb_time / nat_time:6.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
