"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from darcais import _kernels_py

try:
    from darcais import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases(impl):
    n_terms = math.ceil(45 / 1e-3)
    coef = impl.sigma_sieve(n_terms).astype(np.float64)
    coef[1:] /= np.arange(1, n_terms + 1)
    thetas = -math.pi + 2 * math.pi * (np.arange(64) + 0.5) / 64
    ys = np.linspace(0.5, 40, 200)
    return {
        "sigma_sieve(500000)": lambda: impl.sigma_sieve(500_000),
        "lambert_real x200": lambda: [impl.lambert_real(float(y)) for y in ys],
        "lambert_complex y=1e-3, 64 theta": lambda: impl.lambert_complex(coef, 1e-3, thetas),
    }


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = {"python": _kernels_py}
    if _kernels_c is not None:
        impls["cython"] = _kernels_c
    timings = {name: {} for name in impls}
    for name, impl in impls.items():
        for label, fn in cases(impl).items():
            timings[name][label] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    labels = list(timings["python"])
    print(f"{'kernel':<36}" + "".join(f"{n:>12}" for n in impls) + ("     speedup" if len(impls) > 1 else ""))
    for label in labels:
        row = f"{label:<36}" + "".join(f"{timings[n][label]:>11.4f}s" for n in impls)
        if len(impls) > 1:
            row += f"{timings['python'][label] / timings['cython'][label]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
