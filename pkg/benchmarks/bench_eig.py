"""Timing comparison of the two eigensolver kernels.

Runs the compiled cyclic-Jacobi kernel against its pure-Python twin on
seeded random Hermitian matrices and prints a table of per-call times.
numpy.linalg.eigh is included as a familiar reference point, not as a
backend the package uses.

Usage: python3 benchmarks/bench_eig.py [--sizes 2,4,8,16,32] [--repeats 20]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qborn.kernels import _jacobi_py

try:
    from qborn.kernels import _jacobi  # compiled extension
except ImportError:
    _jacobi = None


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (z + z.conj().T)


def time_kernel(fn, matrices, conv_scale: float, repeats: int) -> float:
    """Best-of-repeats mean time per call, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for h in matrices:
            conv = conv_scale * (1.0 + np.linalg.norm(h))
            fn(h, conv, 100)
        best = min(best, (time.perf_counter() - t0) / len(matrices))
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="2,4,8,16,32", help="comma-separated matrix sizes")
    parser.add_argument("--repeats", type=int, default=20, help="timing repeats per cell")
    parser.add_argument("--batch", type=int, default=25, help="matrices per size")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _jacobi is None:
        print("compiled kernel not built; showing the pure-Python kernel only\n")

    header = f"{'n':>4}  {'python (us)':>12}"
    if _jacobi is not None:
        header += f"  {'compiled (us)':>14}  {'speedup':>8}"
    header += f"  {'numpy eigh (us)':>16}"
    print(header)
    print("-" * len(header))

    rng = np.random.default_rng(7)
    for n in sizes:
        matrices = [random_hermitian(n, rng) for _ in range(args.batch)]
        t_py = time_kernel(_jacobi_py.jacobi_eigh, matrices, 1e-12, args.repeats)
        t_np = time_kernel(lambda h, _c, _s: np.linalg.eigh(h), matrices, 1e-12, args.repeats)
        line = f"{n:>4}  {t_py * 1e6:>12.1f}"
        if _jacobi is not None:
            t_c = time_kernel(_jacobi.jacobi_eigh, matrices, 1e-12, args.repeats)
            line += f"  {t_c * 1e6:>14.1f}  {t_py / t_c:>7.1f}x"
        line += f"  {t_np * 1e6:>16.1f}"
        print(line)

    # agreement spot check so the table cannot silently compare different answers
    if _jacobi is not None:
        h = random_hermitian(12, rng)
        conv = 1e-12 * (1.0 + np.linalg.norm(h))
        d1, _, _, ok1 = _jacobi.jacobi_eigh(h, conv, 100)
        d2, _, _, ok2 = _jacobi_py.jacobi_eigh(h, conv, 100)
        gap = float(np.max(np.abs(np.sort(d1) - np.sort(d2))))
        print(f"\nbackends agree on a 12x12 spot check to {gap:.2e} (converged: {ok1 and ok2})")


if __name__ == "__main__":
    main()
