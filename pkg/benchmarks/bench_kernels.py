"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py [--repeat 5] [--n 7]

The first numba call compiles (or loads from cache) and is excluded.
"""

import argparse
import time

import numpy as np

from expertlop import kernels
from expertlop.decomposition import index_permutations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def incidence_case(n):
    perms = index_permutations(n)
    pairs = np.array([(i, j) for i in range(n) for j in range(i + 1, n)], dtype=np.int64)
    return lambda impl: impl["pair_incidence"](perms, pairs)


def simplex_case(n):
    # phase one of the membership system for a random interior point
    perms = index_permutations(n)
    pairs = np.array([(i, j) for i in range(n) for j in range(i + 1, n)], dtype=np.int64)
    inc = kernels._pair_incidence_numpy(perms, pairs).astype(float)
    A = np.vstack([inc.T, np.ones(len(perms))])
    b = A @ np.random.default_rng(0).dirichlet(np.ones(len(perms)))
    m, N = A.shape

    def run(impl):
        T = np.zeros((m + 1, N + m + 1))
        T[:m, :N] = A
        T[:m, N:N + m] = np.eye(m)
        T[:m, -1] = b
        T[m, :N] = -A.sum(axis=0)
        T[m, -1] = -b.sum()
        basis = np.arange(N, N + m, dtype=np.int64)
        return impl["simplex_iterate"](T, basis, N, N, 1e-9, 100_000)

    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=7, help="number of labels (n! rankings)")
    args = ap.parse_args()

    backends = sorted(kernels.IMPLEMENTATIONS)
    if "numba" not in backends:
        print("numba not available; timing numpy only")
    cases = {
        f"pair_incidence n={args.n + 1}": incidence_case(args.n + 1),
        f"simplex phase 1 n={args.n}": simplex_case(args.n),
    }
    print(f"{'case':28s} " + " ".join(f"{b:>12s}" for b in backends) + "      speedup")
    for name, case in cases.items():
        row = {}
        for b in backends:
            impl = kernels.IMPLEMENTATIONS[b]
            case(impl)  # warm up / compile
            row[b] = best_of(lambda: case(impl), args.repeat)
        cells = " ".join(f"{row[b] * 1e3:10.2f}ms" for b in backends)
        speed = f"{row['numpy'] / row['numba']:10.1f}x" if "numba" in row else ""
        print(f"{name:28s} {cells} {speed}")


if __name__ == "__main__":
    main()
