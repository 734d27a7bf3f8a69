"""Command-line front end: deterministic CSV for every figure-level quantity.

Columns per subcommand::

    triangle    n,k,A                          exact A(2,n,k), rows 1..n
    compare     n,k,ln_exact,ln_approx,diff     ln a(n,k) vs the local formula
    logconcave  n,k,kappa,lhs,rhs               ln(a_k^2/(a_{k-1}a_{k+1})) vs 1/(n K^3 V)
                (--curve: y,kappa,rhs over a log-spaced y grid)
    asymmetry   n,k,stat_num,stat_den,stat_float
    psi         y,psi                           F(y) F(y + ln F(y))
    bound       y,theta,log_ratio_sq,log_one_minus_beta
    partition   n,p,ln_p,ln_hr_lemma,ln_hr_closed
    verify      pass/fail table of the acceptance checks

Floats are written with 17 significant digits. ``NA`` marks values outside
the hypotheses of the local formula (k/n > 1 - 1e-3 or k/n < 1e-6).
"""
from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, TextIO

import numpy as np

from . import acceptance, eta_eval, exact_series, ldp_saddle
from .errors import DomainError

SUBCOMMANDS = ("triangle", "compare", "logconcave", "asymmetry", "psi", "bound", "partition", "verify")

EXIT_USAGE = 2
EXIT_RANGE = 3


class ConfigRangeError(ValueError):
    def __init__(self, param: str, message: str):
        super().__init__(f"--{param.replace('_', '-')}: {message}")
        self.param = param


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: int | None = None
    k_min: int | None = None
    k_max: int | None = None
    y_min: float | None = None
    y_max: float | None = None
    y: float | None = None
    grid_points: int | None = None
    output_path: str | None = None
    curve: bool = False


def fmt(x: float) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# validation


def _require(cfg: RunConfig, name: str):
    value = getattr(cfg, name)
    if value is None:
        raise ConfigRangeError(name, "is required for this subcommand")
    return value


def _k_range(cfg: RunConfig, n: int, lo: int, hi: int) -> range:
    k_min = lo if cfg.k_min is None else cfg.k_min
    k_max = hi if cfg.k_max is None else cfg.k_max
    if not lo <= k_min <= hi:
        raise ConfigRangeError("k_min", f"must lie in [{lo}, {hi}] for n={n}, got {k_min}")
    if not k_min <= k_max <= hi:
        raise ConfigRangeError("k_max", f"must lie in [{k_min}, {hi}] for n={n}, got {k_max}")
    return range(k_min, k_max + 1)


def _n(cfg: RunConfig, lo: int = 1) -> int:
    n = _require(cfg, "n")
    if n < lo:
        raise ConfigRangeError("n", f"must be >= {lo}, got {n}")
    return n


def _y_grid(cfg: RunConfig, default: tuple[float, float, int]) -> np.ndarray:
    y_min = default[0] if cfg.y_min is None else cfg.y_min
    y_max = default[1] if cfg.y_max is None else cfg.y_max
    m = default[2] if cfg.grid_points is None else cfg.grid_points
    if not (y_min > 0 and math.isfinite(y_min)):
        raise ConfigRangeError("y_min", f"must be positive, got {y_min}")
    if not (y_max >= y_min and math.isfinite(y_max)):
        raise ConfigRangeError("y_max", f"must be finite and >= y-min, got {y_max}")
    if m < 1:
        raise ConfigRangeError("grid_points", f"must be >= 1, got {m}")
    if m == 1:
        return np.array([y_min])
    return np.logspace(math.log10(y_min), math.log10(y_max), m)


# ---------------------------------------------------------------------------
# subcommands; each yields CSV lines


def _triangle(cfg: RunConfig) -> Iterator[str]:
    yield "n,k,A"
    yield from exact_series.darcais_triangle(_n(cfg)).csv_lines()


def _in_formula_range(n: int, k: int) -> bool:
    return ldp_saddle.KAPPA_MIN <= k / n <= ldp_saddle.KAPPA_MAX


def _compare(cfg: RunConfig) -> Iterator[str]:
    n = _n(cfg)
    ks = _k_range(cfg, n, 1, n)
    tri = exact_series.darcais_triangle(n)
    yield "n,k,ln_exact,ln_approx,diff"
    for k in ks:
        exact = ldp_saddle.ln_exact_a(n, k, tri)
        if _in_formula_range(n, k):
            approx = ldp_saddle.br_log_approx(n, k, with_exact=False).ln_approx
            yield f"{n},{k},{fmt(exact)},{fmt(approx)},{fmt(exact - approx)}"
        else:
            yield f"{n},{k},{fmt(exact)},NA,NA"


def _logconcave(cfg: RunConfig) -> Iterator[str]:
    n = _n(cfg)
    if cfg.curve:
        yield "y,kappa,rhs"
        for y in _y_grid(cfg, (0.01, 10.0, 200)):
            kappa, rhs = ldp_saddle.logconcave_curve(n, float(y))
            yield f"{fmt(y)},{fmt(kappa)},{fmt(rhs)}"
        return
    if n < 3:
        raise ConfigRangeError("n", f"must be >= 3 for interior k, got {n}")
    ks = _k_range(cfg, n, 2, n - 1)
    tri = exact_series.darcais_triangle(n)
    yield "n,k,kappa,lhs,rhs"
    for k in ks:
        lhs = exact_series.logconcavity_lhs(n, k, tri)
        rhs = ldp_saddle.logconcave_rhs(n, k / n) if _in_formula_range(n, k) else math.nan
        yield f"{n},{k},{fmt(k / n)},{fmt(lhs)},{fmt(rhs)}"


def _asymmetry(cfg: RunConfig) -> Iterator[str]:
    n = _n(cfg)
    ks = _k_range(cfg, n, 1, n)
    tri = exact_series.darcais_triangle(n)
    yield "n,k,stat_num,stat_den,stat_float"
    for k in ks:
        s = exact_series.asymmetry_stat(n, k, tri)
        yield f"{n},{k},{s.numerator},{s.denominator},{fmt(s.numerator / s.denominator)}"


def _psi(cfg: RunConfig) -> Iterator[str]:
    yield "y,psi"
    for y in _y_grid(cfg, (1e-3, 30.0, 200)):
        yield f"{fmt(y)},{fmt(ldp_saddle.psi(float(y)))}"


def _bound(cfg: RunConfig) -> Iterator[str]:
    y = _require(cfg, "y")
    if not y >= eta_eval.COMPLEX_RE_FLOOR or not math.isfinite(y):
        raise ConfigRangeError("y", f"must be finite and >= {eta_eval.COMPLEX_RE_FLOOR}, got {y}")
    m = 512 if cfg.grid_points is None else cfg.grid_points
    if m < 1:
        raise ConfigRangeError("grid_points", f"must be >= 1, got {m}")
    thetas = acceptance.theta_grid(m)
    vals = eta_eval.eval_F_grid(y, thetas)
    log_ratio = np.log(np.abs(vals) ** 2 / eta_eval.eval_F(y) ** 2)
    log_bound = np.log1p(-eta_eval.beta_bound(y, thetas))
    yield "y,theta,log_ratio_sq,log_one_minus_beta"
    for th, a, b in zip(thetas, log_ratio, log_bound):
        yield f"{fmt(y)},{fmt(th)},{fmt(a)},{fmt(b)}"


def _partition(cfg: RunConfig) -> Iterator[str]:
    n = _n(cfg)
    p = exact_series.partition_table(n)[n]
    lemma, closed = ldp_saddle.hr_approx(n)
    yield "n,p,ln_p,ln_hr_lemma,ln_hr_closed"
    yield f"{n},{p},{fmt(exact_series.ln_rational(p))},{fmt(lemma)},{fmt(closed)}"


_HANDLERS = {
    "triangle": _triangle,
    "compare": _compare,
    "logconcave": _logconcave,
    "asymmetry": _asymmetry,
    "psi": _psi,
    "bound": _bound,
    "partition": _partition,
}


@contextmanager
def _open_output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _verify(out: TextIO) -> int:
    results = []
    for check in acceptance.CHECKS:
        res = acceptance.run_check(check)
        results.append(res)
        print(res.line(), file=out, flush=True)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed", file=out)
    if failed:
        print(f"failed: {', '.join(map(str, failed))}", file=out)
    return 1 if failed else 0


def run(cfg: RunConfig) -> int:
    """Execute one subcommand; returns the process exit status."""
    if cfg.subcommand not in SUBCOMMANDS:
        print(f"error: unknown subcommand {cfg.subcommand!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cfg.subcommand == "verify":
            with _open_output(cfg.output_path) as out:
                return _verify(out)
        # materialize first so range errors never leave a half-written file
        lines = list(_HANDLERS[cfg.subcommand](cfg))
    except (ConfigRangeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    with _open_output(cfg.output_path) as out:
        out.write("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darcais",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if "n" in flags:
            p.add_argument("--n", type=int, required=True)
        if "k" in flags:
            p.add_argument("--k-min", type=int)
            p.add_argument("--k-max", type=int)
        if "yrange" in flags:
            p.add_argument("--y-min", type=float)
            p.add_argument("--y-max", type=float)
        if "y" in flags:
            p.add_argument("--y", type=float, required=True)
        if "grid" in flags:
            p.add_argument("--grid-points", type=int)
        p.add_argument("--output", "-o", dest="output_path", help="CSV file (default: stdout)")
        return p

    add("triangle", "exact d'Arcais triangle rows 1..n", "n")
    add("compare", "ln a(n,k) against the local large-deviation formula", "n", "k")
    lc = add("logconcave", "log-concavity ratio against 1/(n K^3 V)", "n", "k", "yrange", "grid")
    lc.add_argument("--curve", action="store_true", help="emit the parametric curve over y instead")
    add("asymmetry", "exact asymmetry statistic", "n", "k")
    add("psi", "F(y) F(y + ln F(y)) on a log grid", "yrange", "grid")
    add("bound", "|F(y - i theta)|^2/F(y)^2 against 1 - beta(y, theta)", "y", "grid")
    add("partition", "p(n) with both Hardy-Ramanujan approximations", "n")
    add("verify", "run every acceptance check")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
