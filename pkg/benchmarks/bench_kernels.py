"""Timings for the mod-p row reduction kernel and the full pipeline.

    python benchmarks/bench_kernels.py [--sizes 100 200 400] [--repeat 3]

Run once normally and once with HHLIE_DISABLE_NUMBA=1 to compare the whole
pipeline under both backends; the kernel table always times both.
"""

import argparse
import time

import numpy as np

from hhlie import _kernels
from hhlie.corpus import FamilySpec, gen
from hhlie.criteria import Analysis, all_criteria
from hhlie.oracle import hh1_direct

P = 32003


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rref(sizes, repeat):
    rng = np.random.default_rng(0)
    print(f"rref mod {P}   (best of {repeat})")
    print(f"{'size':>6} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for n in sizes:
        # rank-deficient on purpose, like the coboundary matrices
        m = rng.integers(0, P, size=(n, n // 2)) @ rng.integers(0, P, size=(n // 2, n)) % P
        t_np = best_of(lambda: _kernels.rref_modp_numpy(m, P), repeat)
        if _kernels.rref_modp_numba is not None:
            _kernels.rref_modp_numba(m[:4, :4].copy(), P)  # compile outside the timing
            t_nb = best_of(lambda: _kernels.rref_modp_numba(m, P), repeat)
            a, b = _kernels.rref_modp_numpy(m, P), _kernels.rref_modp_numba(m, P)
            assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
            print(f"{n:6d} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")
        else:
            print(f"{n:6d} {t_np:10.4f} {'-':>10} {'-':>8}")


PIPELINE = [FamilySpec.of("KXn", 5, n=5), FamilySpec.of("D1A1k", 3, k=3),
            FamilySpec.of("QCI", 5, n=(3, 3, 3), q=2), FamilySpec.of("QCI", 2, n=(2, 2, 2), q=1),
            FamilySpec.of("DXYmn", 3, m=3, n=3), FamilySpec.of("Qnm", 3, n=2, m=3)]


def bench_pipeline(repeat):
    print(f"\npipeline, backend {_kernels.backend()}   (best of {repeat})")
    print(f"{'entry':34} {'dim':>4} {'HH1':>4} {'complex':>9} {'criteria':>9} {'oracle':>9}")
    for spec in PIPELINE:
        pres = gen(spec)

        def complex_():
            A = Analysis(pres)
            return A.report

        t_cx = best_of(complex_, repeat)
        A = Analysis(pres)
        A.report
        t_cr = best_of(lambda: all_criteria(Analysis(pres)), repeat)
        t_or = best_of(lambda: hh1_direct(A.alg), repeat)
        print(f"{spec.label:34} {A.alg.dim:4d} {A.space.dim:4d} {t_cx:9.3f} {t_cr:9.3f} {t_or:9.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-pipeline", action="store_true")
    opts = ap.parse_args()
    bench_rref(opts.sizes, opts.repeat)
    if not opts.skip_pipeline:
        bench_pipeline(opts.repeat)


if __name__ == "__main__":
    main()
