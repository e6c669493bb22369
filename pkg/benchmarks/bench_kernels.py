"""Time the numba kernels against the numpy fallbacks on realistic batches.

    python3 benchmarks/bench_kernels.py [--g 5] [--repeat 3]

Each kernel is called once before timing so numba compilation (or cache load)
is excluded.  Results must match exactly; the script exits 1 if they do not.
"""

import argparse
import sys
import time

import numpy as np

from permcount import kernels
from permcount._jit import HAVE_NUMBA
from permcount.enumeration import level_set_array, symmetric_group_array
from permcount.lemma import default_order, depths
from permcount.products import long_cycle_fixing_last


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(g):
    n = 2 * g - 2
    X, Y = level_set_array(n, g - 1), level_set_array(n, g - 1)
    ident = np.arange(n, dtype=np.uint8)
    c = np.array(long_cycle_fixing_last(n), dtype=np.uint8)

    m = 2 * g - 3
    S = symmetric_group_array(m)
    ls = m - kernels._cycle_counts_np(S)
    ds = depths(S, default_order(m)).astype(np.int64)
    tau = np.arange(m, dtype=np.uint8)
    K = m * (m - 1) // 2

    big = symmetric_group_array(min(n, 8))
    return [
        (f"cycle_counts S_{big.shape[1]} ({len(big)})",
         lambda: kernels._cycle_counts_nb(big), lambda: kernels._cycle_counts_np(big)),
        (f"count_pairs G({g - 1},{g - 1}) strict ({len(X)}x{len(Y)})",
         lambda: kernels._count_pairs_nb(X, Y, ident, 2 * g - 4, n - 1, 1, False),
         lambda: kernels._count_pairs_np(X, Y, ident, 2 * g - 4, n - 1, 1, False)),
        (f"cofactor_lengths S_{n} level {g - 1} ({len(X)})",
         lambda: kernels._cofactor_lengths_nb(X, c, False),
         lambda: kernels._cofactor_lengths_np(X, c, False)),
        (f"additive_hist S_{m} ({len(S)}x{len(S)})",
         lambda: kernels._additive_hist_nb(S, ls, ds, tau, 0, K),
         lambda: kernels._additive_hist_np(S, ls, ds, tau, 0, K)),
    ]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--g", type=int, default=4)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args()
    if not HAVE_NUMBA:
        print("numba unavailable or PERMCOUNT_DISABLE_JIT set; nothing to compare")
        return 1

    print(f"{'kernel':<48}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    ok = True
    for name, nb, npy in cases(a.g):
        t_nb, r_nb = best_of(nb, a.repeat)
        t_np, r_np = best_of(npy, a.repeat)
        same = np.array_equal(np.asarray(r_nb), np.asarray(r_np))
        ok &= same
        print(f"{name:<48}{t_nb:>10.4f}{t_np:>10.4f}{t_np / max(t_nb, 1e-9):>8.1f}x"
              + ("" if same else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
