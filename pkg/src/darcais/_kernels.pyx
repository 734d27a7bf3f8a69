# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`darcais._kernels_py`."""

import numpy as np

from libc.math cimport cos, exp, fabs, log1p, sin
from libc.stdint cimport int64_t

MAX_TERMS = 10_000_000
cdef Py_ssize_t RESEED = 32


def sigma_sieve(Py_ssize_t n_max):
    """Divisor sums sigma(0..n_max) as int64, with sigma(0) = 0."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    out = np.zeros(n_max + 1, dtype=np.int64)
    cdef int64_t[::1] s = out
    cdef Py_ssize_t d, m
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            s[m] += d
    return out


def lambert_real(double x, double rel_tol=1e-18):
    """Return (F, F', F'') at x by direct summation over m >= 1.

    Stops once m^2 q^m / (1 - q^m)^2 drops below rel_tol * F.
    """
    cdef double f0 = 0.0, f1 = 0.0, f2 = 0.0
    cdef double q, r, mm
    cdef Py_ssize_t m = 1
    while m < MAX_TERMS:
        mm = <double>m
        q = exp(-mm * x)
        if q == 0.0:
            break
        r = q / (1.0 - q)
        f0 += -log1p(-q)
        f1 -= mm * r
        f2 += mm * mm * r / (1.0 - q)
        if mm * mm * r / (1.0 - q) < rel_tol * f0:
            break
        m += 1
    return f0, f1, f2


def lambert_complex(double[::1] coef, double y, double[::1] thetas):
    """sum_{n>=1} coef[n] e^{-n y} e^{i n theta} for every theta.

    ``coef[0]`` is ignored. Neumaier-compensated in both components.
    """
    cdef Py_ssize_t n_max = coef.shape[0] - 1
    cdef Py_ssize_t n_theta = thetas.shape[0]
    cdef Py_ssize_t n, j
    cdef double th, t, re, im, cre, cim, tmp, c, s, ct, st, c_new
    decay_arr = np.empty(n_max + 1, dtype=np.float64)
    cdef double[::1] decay = decay_arr
    for n in range(1, n_max + 1):
        decay[n] = coef[n] * exp(-(<double>n) * y)
    out = np.empty(n_theta, dtype=np.complex128)
    cdef double complex[::1] res = out
    for j in range(n_theta):
        th = thetas[j]
        ct = cos(th)
        st = sin(th)
        c = 1.0
        s = 0.0
        re = 0.0
        im = 0.0
        cre = 0.0
        cim = 0.0
        for n in range(1, n_max + 1):
            # rotate by theta, reseeding from libm every RESEED terms
            if n % RESEED == 0:
                c = cos((<double>n) * th)
                s = sin((<double>n) * th)
            else:
                c_new = c * ct - s * st
                s = s * ct + c * st
                c = c_new
            t = decay[n] * c
            tmp = re + t
            if fabs(re) >= fabs(t):
                cre += (re - tmp) + t
            else:
                cre += (t - tmp) + re
            re = tmp
            t = decay[n] * s
            tmp = im + t
            if fabs(im) >= fabs(t):
                cim += (im - tmp) + t
            else:
                cim += (t - tmp) + im
            im = tmp
        res[j] = (re + cre) + 1j * (im + cim)
    return out
