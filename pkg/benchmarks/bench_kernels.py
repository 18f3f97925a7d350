"""Compare the compiled kernel against the numpy fallback.

Run:  python benchmarks/bench_kernels.py [count]
"""

import sys
import time

import numpy as np

from tritangle import kernels


def bench(backend: str, amps: np.ndarray, repeats: int = 3) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernels.invariant_rows(amps, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    rng = np.random.default_rng(2024)
    amps = rng.standard_normal((count, 8)) + 1j * rng.standard_normal((count, 8))

    print(f"batch of {count} states, {kernels.NCOLS} invariant columns per state")
    times = {}
    for backend in kernels.available_backends():
        times[backend] = bench(backend, amps)
        per_state = times[backend] / count * 1e9
        print(f"  {backend:<8} {times[backend]:8.4f} s   ({per_state:8.1f} ns/state)")
    if "cython" in times and "numpy" in times:
        print(f"  speedup cython vs numpy: {times['numpy'] / times['cython']:.2f}x")

    ref = kernels.invariant_rows(amps[:2000], backend="numpy")
    for backend in kernels.available_backends():
        got = kernels.invariant_rows(amps[:2000], backend=backend)
        scale = np.maximum(np.abs(ref), 1.0)
        print(f"  {backend} max relative deviation from numpy: "
              f"{np.max(np.abs(got - ref) / scale):.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
