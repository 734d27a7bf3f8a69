"""Acceptance checks shared by ``darcais verify`` and the test suite.

Each check returns a :class:`CheckResult` carrying the measured value and the
threshold it was compared against.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import eta_eval, exact_series, ldp_saddle


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    measured: str
    threshold: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.number:>2} {self.name}: measured {self.measured}; "
            f"threshold {self.threshold} ({self.seconds:.1f}s)"
        )


@lru_cache(maxsize=2)
def _triangle(n_max: int) -> exact_series.DArcaisTriangle:
    return exact_series.darcais_triangle(n_max)


def _big_triangle() -> exact_series.DArcaisTriangle:
    return _triangle(400)


def check_triangle_oracle() -> CheckResult:
    t0 = time.perf_counter()
    tri = exact_series.darcais_triangle(40)
    bell = exact_series.darcais_bell_table(40)
    mismatches = sum(
        1
        for n in range(1, 41)
        for k in range(1, n + 1)
        if tri.entry(n, k) != bell[n - 1][k - 1]
    )
    first = [list(tri.row(n)) for n in range(1, 5)]
    expected = [[1], [3, 1], [8, 9, 1], [42, 59, 18, 1]]
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and first == expected and elapsed < 10
    return CheckResult(
        1, "triangle = Bell oracle (n <= 40), rows 1-4",
        ok, f"{mismatches} mismatches, rows {first}, {elapsed:.2f}s",
        "0 mismatches, rows [[1],[3,1],[8,9,1],[42,59,18,1]], < 10 s",
    )


def check_logconcavity_exact() -> CheckResult:
    t0 = time.perf_counter()
    tri = _triangle(150)
    violations = []
    for n in range(3, 151):
        for k in range(2, n):
            a_k = tri.entry(n, k)
            if k * a_k * a_k < (k + 1) * tri.entry(n, k - 1) * tri.entry(n, k + 1):
                violations.append((n, k))
    elapsed = time.perf_counter() - t0
    return CheckResult(
        2, "exact log-concavity of a(n,k), n <= 150",
        not violations and elapsed < 120,
        f"{len(violations)} violations, {elapsed:.2f}s", "0 violations, < 120 s",
    )


def check_modular_identity() -> CheckResult:
    worst = 0.0
    for y in np.logspace(-3, math.log10(50), 200):
        f = eta_eval.eval_F(y)
        worst = max(worst, abs(f - eta_eval.modular_F(y)) / max(1.0, f))
    return CheckResult(
        3, "modular identity residual on [1e-3, 50]",
        worst <= 1e-12, f"{worst:.3e}", "<= 1e-12",
    )


PSI_SLOPE_LIMIT = -(math.pi**2 - 9) / math.pi**2


def check_asymmetry_lemma() -> CheckResult:
    err30 = abs(ldp_saddle.psi(30.0) - math.pi**2 / 9)
    ys = [1e-2, 3e-3, 1e-3]
    gaps = [abs((ldp_saddle.psi(y) - 1) / y - PSI_SLOPE_LIMIT) for y in ys]
    improving = all(a > b for a, b in zip(gaps, gaps[1:]))
    ok = err30 <= 1e-10 and gaps[-1] <= 5e-2 and improving
    return CheckResult(
        4, "psi(30) -> pi^2/9, (psi(y)-1)/y -> -(pi^2-9)/pi^2",
        ok, f"|psi(30)-pi^2/9|={err30:.3e}, slope gaps {[f'{g:.4f}' for g in gaps]}",
        "<= 1e-10; gap <= 5e-2 at 1e-3 and decreasing",
    )


BR2_GRID = [
    (n, k)
    for n in (150, 400, 1000, 5000)
    for k in (max(1, n // 50), n // 10, n // 4, n // 2, (9 * n) // 10)
]


def check_theorem1() -> CheckResult:
    t0 = time.perf_counter()
    tri = _big_triangle()
    diffs = [abs(ldp_saddle.br_log_approx(n, n // 2, tri).diff) for n in (50, 100, 200, 400)]
    d150 = abs(ldp_saddle.br_log_approx(150, 75, tri).diff)
    decreasing = all(a > b for a, b in zip(diffs, diffs[1:]))
    br_gap = max(
        abs(
            ldp_saddle.br2_log_approx(n, k)
            - ldp_saddle.br_log_approx(n, k, with_exact=False).ln_approx
        )
        for n, k in BR2_GRID
    )
    elapsed = time.perf_counter() - t0
    ok = decreasing and d150 <= 0.2 and br_gap <= 1e-9 and elapsed < 300
    return CheckResult(
        5, "local formula at kappa=1/2, BR2 identity",
        ok,
        f"|diff| n=50..400 {[f'{d:.2e}' for d in diffs]}, n=150 {d150:.2e}, "
        f"max|br2-br1|={br_gap:.1e}, {elapsed:.1f}s",
        "strictly decreasing; <= 0.2 at n=150; <= 1e-9; < 300 s",
    )


# REGRESSION: frozen tolerance, not a derived value
COROLLARY_RATIO_TOL = 0.10


def check_corollary1() -> CheckResult:
    tri = _big_triangle()
    ratios = {
        n: exact_series.logconcavity_lhs(n, n // 2, tri) / ldp_saddle.logconcave_rhs(n, 0.5)
        for n in (100, 400)
    }
    ok = abs(ratios[400] - 1) <= COROLLARY_RATIO_TOL and abs(ratios[400] - 1) < abs(ratios[100] - 1)
    return CheckResult(
        6, "log-concavity ratio at kappa=1/2",
        ok, f"ratio n=100 {ratios[100]:.6f}, n=400 {ratios[400]:.6f}",
        "|ratio-1| <= 0.10 at n=400 and smaller than at n=100",
    )


def theta_grid(m: int) -> np.ndarray:
    """m midpoints strictly inside (-pi, pi)."""
    return -math.pi + 2 * math.pi * (np.arange(m) + 0.5) / m


def check_minor_arc() -> CheckResult:
    thetas = theta_grid(512)
    worst = math.inf
    for y in (1e-3, 1e-2, 0.1, 1.0):
        vals = eta_eval.eval_F_grid(y, thetas)
        lhs = 1 - np.abs(vals) ** 2 / eta_eval.eval_F(y) ** 2
        margin = lhs - eta_eval.beta_bound(y, thetas)
        worst = min(worst, float(margin.min()))
    return CheckResult(
        7, "minor-arc bound 1-|F(y-i theta)|^2/F^2 >= beta",
        worst >= -1e-12, f"min margin {worst:.3e}", ">= -1e-12",
    )


def check_hardy_ramanujan() -> CheckResult:
    pt = exact_series.partition_table(1600)
    exact_100 = pt[100] == 190569292
    enum_ok = all(pt[n] == exact_series.count_partitions_bruteforce(n) for n in range(61))
    ratios = [math.exp(exact_series.ln_rational(pt[n]) - ldp_saddle.hr_approx(n)[1]) for n in (100, 400, 1600)]
    ratio_ok = (
        all(a > b for a, b in zip(ratios, ratios[1:]))
        and all(r > 1 for r in ratios)
        and 1.00 <= ratios[0] <= 1.05
    )
    n = 10**6
    hr_gap = n * ldp_saddle.hr_saddle(n) - math.sqrt(n * eta_eval.ZETA2) + 0.25
    ok = exact_100 and enum_ok and ratio_ok and abs(hr_gap) <= 5e-3
    return CheckResult(
        8, "Hardy-Ramanujan",
        ok,
        f"p(100) ok={exact_100}, enumeration ok={enum_ok}, "
        f"p/closed {[f'{r:.5f}' for r in ratios]}, n*y_n - sqrt(n zeta2) + 1/4 = {hr_gap:.2e}",
        "exact; equal n <= 60; ratio decreasing to 1 and in [1.00, 1.05] at n=100; |.| <= 5e-3",
    )


def check_taylor_limits() -> CheckResult:
    w2 = eta_eval.taylor_W(2, 1e-3)
    w3 = eta_eval.taylor_W(3, 1e-3)
    ok = abs(w2 - 2) <= 0.02 and abs(w3 + 6) <= 0.1
    return CheckResult(
        9, "taylor_W limits at y=1e-3",
        ok, f"W2={w2:.6f}, W3={w3:.6f}", "|W2-2| <= 0.02, |W3+6| <= 0.1",
    )


def check_compositions() -> CheckResult:
    bad = []
    for n in range(1, 13):
        for k in range(1, n + 1):
            total, a = exact_series.composition_check(n, k)
            if total != a:
                bad.append((n, k))
    return CheckResult(
        10, "composition sums equal a(n,k), n <= 12",
        not bad, f"{len(bad)} mismatches", "0 mismatches",
    )


def check_asymmetry_nonvanishing() -> CheckResult:
    tri = _triangle(150)
    best_k, best = max(
        ((k, abs(exact_series.asymmetry_stat(150, k, tri))) for k in range(3, 148)),
        key=lambda kv: kv[1],
    )
    return CheckResult(
        11, "asymmetry statistic nonzero at n=150",
        best >= 1e-3, f"max |stat| = {float(best):.4e} at k={best_k}", ">= 1e-3",
    )


CHECKS: list[Callable[[], CheckResult]] = [
    check_triangle_oracle,
    check_logconcavity_exact,
    check_modular_identity,
    check_asymmetry_lemma,
    check_theorem1,
    check_corollary1,
    check_minor_arc,
    check_hardy_ramanujan,
    check_taylor_limits,
    check_compositions,
    check_asymmetry_nonvanishing,
]


def run_check(check: Callable[[], CheckResult]) -> CheckResult:
    t0 = time.perf_counter()
    res = check()
    return CheckResult(
        res.number, res.name, res.passed, res.measured, res.threshold,
        time.perf_counter() - t0,
    )


def run_all() -> list[CheckResult]:
    return [run_check(c) for c in CHECKS]
