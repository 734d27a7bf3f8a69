"""Floating-point evaluation of F(y) = -ln((e^{-y}; e^{-y})_inf).

For y >= ``Y_SWITCH`` the Lambert-type series is summed directly. Below it,
the eta-function transformation

    F(y) = zeta(2)/y + ln(y)/2 - ln(2 pi)/2 - y/24 + F(4 pi^2 / y)

is applied once; the inner argument is then larger than 78 and its series
needs a single term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, RangeError

ZETA2 = math.pi**2 / 6
FOUR_PI_SQ = 4 * math.pi**2
LOG_2PI = math.log(2 * math.pi)
Y_SWITCH = 0.5

COMPLEX_RE_FLOOR = 1e-4
COMPLEX_MAX_TERMS = 500_000
TAIL_EXPONENT = 45.0

# read-only sigma(n)/n, plenty for every direct sum at y >= Y_SWITCH
_SMALL_N = 4096
_SMALL_RATIO = kernels.sigma_sieve(_SMALL_N) / np.maximum(np.arange(_SMALL_N + 1), 1)
_SMALL_RATIO[0] = 0.0
_SMALL_RATIO.setflags(write=False)


def _check_y(y: float) -> float:
    y = float(y)
    if not (y > 0 and math.isfinite(y)):
        raise DomainError(f"y must be positive and finite, got {y}")
    return y


def _direct(y: float) -> tuple[float, float, float]:
    return kernels.lambert_real(y)


def eval_all(y: float) -> tuple[float, float, float]:
    """(F, F', F'') at y."""
    y = _check_y(y)
    if y >= Y_SWITCH:
        return _direct(y)
    x = FOUR_PI_SQ / y
    g0, g1, g2 = _direct(x)
    c = FOUR_PI_SQ / (y * y)
    f0 = ZETA2 / y + 0.5 * math.log(y) - 0.5 * LOG_2PI - y / 24 + g0
    f1 = -ZETA2 / (y * y) + 0.5 / y - 1.0 / 24 - c * g1
    f2 = 2 * ZETA2 / y**3 - 0.5 / (y * y) + c * c * g2 + 2 * c / y * g1
    return f0, f1, f2


def eval_F(y: float) -> float:
    return eval_all(y)[0]


def eval_F1(y: float) -> float:
    return eval_all(y)[1]


def eval_F2(y: float) -> float:
    return eval_all(y)[2]


def modular_F(y: float) -> float:
    """Right-hand side of the transformation law, inner term summed directly."""
    y = _check_y(y)
    inner = _direct(FOUR_PI_SQ / y)[0]
    return ZETA2 / y + 0.5 * math.log(y) - 0.5 * LOG_2PI - y / 24 + inner


def log_F_plus_y(y: float) -> float:
    """y + ln F(y) without cancellation at large y.

    For y >= Y_SWITCH this is log1p(sum_{m>=2} sigma(m)/m e^{-(m-1) y}).
    """
    y = _check_y(y)
    if y < Y_SWITCH:
        return y + math.log(eval_F(y))
    m = np.arange(2, _SMALL_N + 1, dtype=np.float64)
    terms = _SMALL_RATIO[2:] * np.exp(-(m - 1) * y)
    return math.log1p(math.fsum(terms))


def _variance_direct(y: float) -> float:
    """Variance of n under rho_n(y), summed as nonnegative terms."""
    n = np.arange(1, _SMALL_N + 1, dtype=np.float64)
    w = _SMALL_RATIO[1:] * np.exp(-(n - 1) * y)  # e^{y} R_n, avoids underflow
    total = math.fsum(w)
    mean = math.fsum(n * w) / total
    return math.fsum((n - mean) ** 2 * w) / total


@dataclass(frozen=True)
class EtaPoint:
    y: float
    F: float
    F1: float
    F2: float
    K: float  # -F/F'
    V: float  # F''/F - (F'/F)^2, i.e. (ln F)''


def eta_point(y: float) -> EtaPoint:
    f0, f1, f2 = eval_all(y)
    if y >= Y_SWITCH:
        # F''/F - (F'/F)^2 cancels to ~1.5 e^{-y} here; sum the variance instead
        v = _variance_direct(y)
    else:
        v = f2 / f0 - (f1 / f0) ** 2
    return EtaPoint(y=float(y), F=f0, F1=f1, F2=f2, K=-f0 / f1, V=v)


def rho(n, y: float):
    """rho_n(y) = sigma(n)/n e^{-n y} / F(y); ``n`` may be an int or an array."""
    y = _check_y(y)
    n_arr = np.atleast_1d(np.asarray(n, dtype=np.int64))
    if n_arr.size and n_arr.min() < 1:
        raise DomainError("rho is defined for n >= 1")
    top = int(n_arr.max()) if n_arr.size else 1
    ratio = kernels.sigma_sieve(top)[n_arr] / n_arr
    out = ratio * np.exp(-n_arr * y) / eval_F(y)
    return float(out[0]) if np.ndim(n) == 0 else out


# ---------------------------------------------------------------------------
# complex argument


def complex_terms(re_w: float, n_max: int | None = None) -> int:
    """Number of terms used for Re(w) = re_w: ceil(45 / re_w), capped."""
    if n_max is not None:
        return int(n_max)
    return min(math.ceil(TAIL_EXPONENT / re_w), COMPLEX_MAX_TERMS)


def _check_re(y: float) -> float:
    y = float(y)
    if not y >= COMPLEX_RE_FLOOR:
        raise RangeError(
            f"Re(w) = {y} is below the supported floor {COMPLEX_RE_FLOOR}"
        )
    return y


def eval_F_grid(y: float, thetas, n_max: int | None = None) -> np.ndarray:
    """F(y - i theta) for each theta, as sum sigma(n)/n e^{-n (y - i theta)}."""
    y = _check_re(y)
    n_terms = complex_terms(y, n_max)
    coef = kernels.sigma_sieve(n_terms).astype(np.float64)
    coef[1:] /= np.arange(1, n_terms + 1)
    th = np.ascontiguousarray(np.atleast_1d(np.asarray(thetas, dtype=np.float64)))
    # e^{i n theta} only depends on theta mod 2 pi
    th = np.remainder(th + math.pi, 2 * math.pi) - math.pi
    return kernels.lambert_complex(coef, y, th)


def eval_F_complex(w: complex, n_max: int | None = None) -> complex:
    w = complex(w)
    return complex(eval_F_grid(w.real, [-w.imag], n_max)[0])


def beta_bound(y: float, theta):
    """Lower bound for 1 - |F(y - i theta)|^2 / F(y)^2 used on the minor arc."""
    y = _check_y(y)
    s2 = np.sin(np.asarray(theta, dtype=np.float64) / 2) ** 2
    sh = math.sinh(y / 2)
    pref = eval_F(2 * y) / eval_F(y) ** 2 * math.cosh(y / 2) / sh
    out = pref * s2 / (sh * sh + s2)
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# scaled Taylor coefficients of f = ln F


def _fd_richardson(g, y: float, h: float, order: int) -> float:
    def central(step):
        if order == 1:
            return (g(y + step) - g(y - step)) / (2 * step)
        return (g(y + step) - 2 * g(y) + g(y - step)) / (step * step)

    return (4 * central(h / 2) - central(h)) / 3


def taylor_W(r: int, y: float) -> float:
    """y^r f^(r)(y) for f = ln F and r in {2, 3, 4}.

    r = 2 comes straight from ``eta_point``; r = 3, 4 differentiate f''
    numerically (step y * 1e-3, one Richardson level).
    """
    y = _check_y(y)
    if r not in (2, 3, 4):
        raise RangeError(f"taylor_W supports r in {{2, 3, 4}}, got {r}")
    if r == 2:
        return y * y * eta_point(y).V

    def fpp(t):
        return eta_point(t).V

    deriv = _fd_richardson(fpp, y, y * 1e-3, order=r - 2)
    return y**r * deriv
