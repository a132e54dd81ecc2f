"""Time the compiled kernels against the numpy reference implementations.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, size) with the best wall time of each backend
and the speedup.  The two backends must also return identical results.
"""

import argparse
import timeit

import numpy as np

from heyde_padic import kernels
from heyde_padic.engine import grid_weights

ref = kernels.reference


def cases(rng):
    for N in (9, 27, 81, 243):
        w1 = rng.integers(0, 100, N)
        w2 = rng.integers(0, 100, N)
        t = int(rng.integers(1, N))
        yield "joint_witness", N, (w1, w2, t, N)
        yield "exact_fourier_witness", N, (w1 - 50, w2, t, N)
        f = rng.normal(size=N) + 1j * rng.normal(size=N)
        yield "fourier_residual", N, (f, f.conj(), t, N, 1e-9)
    for N, d in ((5, 5), (9, 3), (4, 6)):
        W = grid_weights(N, d)
        yield "enumerate_pairs", f"{N}/d={d}", (W, W, 2, N, 0, len(W))


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    if isinstance(a, tuple):
        return all(same(x, y) if not isinstance(x, float) else abs(x - y) <= 1e-12 * max(1, abs(x)) for x, y in zip(a, b))
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"compiled backend: {kernels.BACKEND}")
    if kernels.BACKEND == "python":
        print("extension not built; both columns time the numpy reference")
    print(f"{'kernel':24s} {'size':>10s} {'numpy (s)':>12s} {'compiled (s)':>13s} {'speedup':>8s}")
    for name, size, fargs in cases(np.random.default_rng(args.seed)):
        fast, slow = getattr(kernels, name), getattr(ref, name)
        assert same(fast(*fargs), slow(*fargs)), name
        n = 1 if name == "enumerate_pairs" else 20
        ts = min(timeit.repeat(lambda: slow(*fargs), number=n, repeat=args.repeat)) / n
        tf = min(timeit.repeat(lambda: fast(*fargs), number=n, repeat=args.repeat)) / n
        print(f"{name:24s} {size!s:>10s} {ts:12.6f} {tf:13.6f} {ts / tf:8.1f}x")


if __name__ == "__main__":
    main()
