"""Pure Python / numpy versions of the compiled kernels.

Used when the Cython extension is not built, or when ``DARCAIS_PURE_PYTHON=1``.
"""
from __future__ import annotations

import math

import numpy as np

MAX_TERMS = 10_000_000


def sigma_sieve(n_max: int) -> np.ndarray:
    """Divisor sums sigma(0..n_max) as int64, with sigma(0) = 0."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    s = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        s[d::d] += d
    return s


def lambert_real(x: float, rel_tol: float = 1e-18) -> tuple[float, float, float]:
    """Return (F, F', F'') at x by direct summation over m >= 1."""
    f0 = f1 = f2 = 0.0
    m = 1
    while m < MAX_TERMS:
        q = math.exp(-m * x)
        if q == 0.0:
            break
        r = q / (1.0 - q)
        f0 += -math.log1p(-q)
        f1 -= m * r
        t2 = m * m * r / (1.0 - q)
        f2 += t2
        if t2 < rel_tol * f0:
            break
        m += 1
    return f0, f1, f2


def lambert_complex(coef: np.ndarray, y: float, thetas: np.ndarray) -> np.ndarray:
    """sum_{n>=1} coef[n] e^{-n y} e^{i n theta} for every theta."""
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    n = np.arange(1, coef.shape[0], dtype=np.float64)
    decay = coef[1:] * np.exp(-n * y)
    out = np.empty(thetas.shape[0], dtype=np.complex128)
    for j, th in enumerate(thetas):
        a = n * th
        # np.sum is pairwise, which keeps the error near log2(N) ulps
        out[j] = complex(np.sum(decay * np.cos(a)), np.sum(decay * np.sin(a)))
    return out
