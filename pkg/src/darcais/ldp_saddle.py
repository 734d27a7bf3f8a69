"""Saddle points of F and the analytic approximations built on them.

All approximations are returned as natural logarithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import exact_series
from .errors import DomainError
from .eta_eval import LOG_2PI, ZETA2, EtaPoint, eta_point, eval_all, eval_F, log_F_plus_y

KAPPA_MIN = 1e-6
KAPPA_MAX = 1 - 1e-3

_BISECT_REL_WIDTH = 1e-13
_NEWTON_STEPS = 3


class BracketError(RuntimeError):
    """Bracket expansion failed; should not happen on the supported range."""


@dataclass(frozen=True)
class SaddleSolution:
    kappa: float
    y_star: float
    point: EtaPoint
    residual: float  # |-F'/F * kappa - 1|


@dataclass(frozen=True)
class ApproxReport:
    n: int
    k: int
    ln_exact: float
    ln_approx: float
    diff: float


@dataclass(frozen=True)
class RateFunctionPoint:
    kappa: float
    Gamma: float
    u: float
    sigma2: float


def _drift(y: float) -> float:
    f0, f1, _ = eval_all(y)
    return -f1 / f0


def check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not KAPPA_MIN <= kappa <= KAPPA_MAX:
        raise DomainError(
            f"kappa={kappa} outside the supported range [{KAPPA_MIN}, {KAPPA_MAX}]"
        )
    return kappa


def _bisect(g, lo: float, hi: float, rel_width: float) -> tuple[float, float]:
    """Shrink [lo, hi] with g(lo) > 0 > g(hi) until relatively narrow."""
    for _ in range(400):
        if hi - lo <= rel_width * hi:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def solve_saddle(kappa: float) -> SaddleSolution:
    """Solve -F'(y)/F(y) = 1/kappa.

    -F'/F decreases from +inf to 1, so the root is bracketed by kappa/8 and a
    geometrically expanded upper end; bisection narrows it and a few Newton
    steps (slope -V) polish it.
    """
    kappa = check_kappa(kappa)
    target = 1.0 / kappa

    def g(y):
        return _drift(y) - target

    lo = kappa / 8
    if g(lo) <= 0:
        raise BracketError(f"lower bracket failed at kappa={kappa}")
    hi = kappa
    for _ in range(200):
        if g(hi) < 0:
            break
        lo = hi
        hi *= 2
    else:
        raise BracketError(f"upper bracket failed at kappa={kappa}")
    lo, hi = _bisect(g, lo, hi, _BISECT_REL_WIDTH)

    y = 0.5 * (lo + hi)
    gy = g(y)
    for _ in range(_NEWTON_STEPS):
        step = gy / -eta_point(y).V
        y_new = y - step
        if not lo <= y_new <= hi:
            break
        g_new = g(y_new)
        if abs(g_new) >= abs(gy):
            break
        y, gy = y_new, g_new
        if gy == 0:
            break
    point = eta_point(y)
    residual = abs(-point.F1 / point.F * kappa - 1)
    return SaddleSolution(kappa=kappa, y_star=y, point=point, residual=residual)


def _kappa_of(n: int, k: int) -> float:
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return check_kappa(k / n)


def ln_exact_a(n: int, k: int, triangle: exact_series.DArcaisTriangle | None = None) -> float:
    return exact_series.ln_rational(exact_series.a_coeff(n, k, triangle))


def br_log_approx(
    n: int,
    k: int,
    triangle: exact_series.DArcaisTriangle | None = None,
    with_exact: bool = True,
) -> ApproxReport:
    """k ln F(y*) + n y* - ln(2 pi k V(y*)) / 2, with y* at kappa = k/n.

    With ``with_exact=False`` the exact side is skipped and reported as NaN.
    """
    sol = solve_saddle(_kappa_of(n, k))
    p = sol.point
    approx = k * math.log(p.F) + n * sol.y_star - 0.5 * math.log(2 * math.pi * k * p.V)
    exact = ln_exact_a(n, k, triangle) if with_exact else math.nan
    return ApproxReport(n=n, k=k, ln_exact=exact, ln_approx=approx, diff=exact - approx)


def rate_point(kappa: float) -> RateFunctionPoint:
    sol = solve_saddle(kappa)
    lnF = math.log(sol.point.F)
    return RateFunctionPoint(
        kappa=sol.kappa,
        Gamma=sol.kappa * lnF + sol.y_star,
        u=-lnF,
        sigma2=sol.kappa**3 * sol.point.V,
    )


def br2_log_approx(n: int, k: int) -> float:
    """-n gamma*(kappa) - ln(2 pi n sigma^2(kappa)) / 2 + ln kappa, gamma* = -Gamma."""
    kappa = _kappa_of(n, k)
    rp = rate_point(kappa)
    return n * rp.Gamma - 0.5 * math.log(2 * math.pi * n * rp.sigma2) + math.log(kappa)


def gamma_prime(u: float) -> float:
    """Slope of gamma(u) = g(-u): K(y) at the y solving ln F(y) = -u."""
    target = -float(u)

    def h(y):
        return math.log(eval_F(y)) - target

    lo, hi = 1.0, 1.0
    while h(lo) <= 0:
        lo /= 2
    while h(hi) >= 0:
        hi *= 2
    lo, hi = _bisect(h, lo, hi, 1e-15)
    f0, f1, _ = eval_all(0.5 * (lo + hi))
    return -f0 / f1


def logconcave_rhs(n: int, kappa: float) -> float:
    """1 / (n K(y*)^3 V(y*))."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    p = solve_saddle(kappa).point
    return 1.0 / (n * p.K**3 * p.V)


def logconcave_curve(n: int, y: float) -> tuple[float, float]:
    """(K(y), 1/(n K(y)^3 V(y))) parametrized directly by y."""
    p = eta_point(y)
    return p.K, 1.0 / (n * p.K**3 * p.V)


def psi(y: float) -> float:
    """F(y) F(y + ln F(y))."""
    shift = log_F_plus_y(y)
    if not shift > 0:
        raise ArithmeticError(f"y + ln F(y) = {shift} is not positive at y={y}")
    return eval_F(y) * eval_F(shift)


def small_kappa_approx(n: int, k: int) -> float:
    """Log of the k ~ sqrt(n) specialization of the local formula."""
    if k < 1 or k > 10 * math.sqrt(n):
        raise DomainError(f"need 1 <= k <= 10 sqrt(n), got n={n}, k={k}")
    kappa = k / n
    lk = math.log(kappa)
    expo = (
        -k * lk
        + k
        + k * math.log(ZETA2)
        + k * kappa * lk / (2 * ZETA2)
        - k * kappa * LOG_2PI / (2 * ZETA2)
    )
    return expo - 0.5 * math.log(2 * math.pi * n / kappa)


def hr_saddle(n: int) -> float:
    """y_n with F'(y_n) = -n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")

    def g(y):
        # increasing in y; flip the sign for _bisect's convention
        return -(eval_all(y)[1] + n)

    seed = math.sqrt(ZETA2 / n)
    lo, hi = seed, seed
    while g(lo) <= 0:
        lo /= 2
    while g(hi) >= 0:
        hi *= 2
    lo, hi = _bisect(g, lo, hi, 1e-15)
    y = 0.5 * (lo + hi)
    for _ in range(_NEWTON_STEPS):
        _, f1, f2 = eval_all(y)
        y_new = y - (f1 + n) / f2
        if not lo <= y_new <= hi or abs(eval_all(y_new)[1] + n) >= abs(f1 + n):
            break
        y = y_new
    return y


def hr_approx(n: int) -> tuple[float, float]:
    """Logs of the two partition-number approximations.

    Returns (n y_n + F(y_n) - ln(2^{5/4} 3^{1/4} n^{3/4}),
             2 sqrt(n zeta(2)) - ln(4 sqrt(3) n)).
    """
    y = hr_saddle(n)
    lemma = n * y + eval_F(y) - (1.25 * math.log(2) + 0.25 * math.log(3) + 0.75 * math.log(n))
    closed = 2 * math.sqrt(n * ZETA2) - math.log(4 * math.sqrt(3) * n)
    return lemma, closed
