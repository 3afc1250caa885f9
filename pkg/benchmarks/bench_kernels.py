"""Compare the numba and pure-numpy kernels on oracle-sized workloads.

    python benchmarks/bench_kernels.py [--repeat 5]

Both paths are timed in the same process (the numba variants are compiled
here directly, independent of KSLAB_DISABLE_NUMBA) and their outputs are
checked for equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from kslab import _kernels
from kslab.boson import _geom, _mono
from kslab.oracle import SymmetricGroup


def _compiled():
    try:
        from numba import njit
    except ImportError:
        return None
    return {
        "word_histogram": njit(cache=True)(_kernels._word_histogram_py),
        "series_mul": njit(cache=True)(_kernels._series_mul_py),
    }


def _series_operands(x_max=6, q_max=20):
    shape = (x_max + 1, q_max + 1, x_max + 1)
    a = _mono(shape)
    for m in range(0, 6):
        a = _kernels._series_mul_np(a, _geom(shape, 1, m))
    return a, _mono(shape) - _mono(shape, 1, 3, 1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    jit = _compiled()
    G = SymmetricGroup(6)
    comp, gens = G.comp.astype(np.int64), G.transpositions
    a, b = _series_operands()

    cases = [
        ("word_histogram d=6 len=4", "word_histogram", (comp, gens, 4, G.identity),
         _kernels._word_histogram_np),
        ("word_histogram d=5 len=5", "word_histogram",
         (SymmetricGroup(5).comp, SymmetricGroup(5).transpositions, 5, 0), _kernels._word_histogram_np),
        ("series_mul 7x21x7", "series_mul", (a, b), _kernels._series_mul_np),
    ]
    print(f"{'kernel':28s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for label, key, argsv, np_fn in cases:
        ref = np_fn(*argsv)
        t_np = min(timeit.repeat(lambda: np_fn(*argsv), number=1, repeat=args.repeat))
        if jit is None:
            print(f"{label:28s} {t_np * 1e3:12.2f} {'n/a':>12s} {'':>8s}")
            continue
        fn = jit[key]
        out = fn(*argsv)  # compile
        if not np.array_equal(out, ref):
            raise SystemExit(f"{label}: numba and numpy disagree")
        t_jit = min(timeit.repeat(lambda: fn(*argsv), number=1, repeat=args.repeat))
        print(f"{label:28s} {t_np * 1e3:12.2f} {t_jit * 1e3:12.2f} {t_np / t_jit:8.1f}x")


if __name__ == "__main__":
    main()
