"""Exact combinatorics: divisor sums, the Lambert series of the abundancy
index, d'Arcais numbers and partition numbers.

Everything here is exact. Rationals are :class:`fractions.Fraction`;
floating point appears only in :func:`ln_rational` and
:func:`logconcavity_lhs`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import kernels
from .errors import DomainError, SizeError

MAX_COMPOSITION_N = 14

# ln 2 split so that e * LN2_HI is exact for |e| < 2**20
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10


# ---------------------------------------------------------------------------
# divisor sums


def sigma(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    if n < 1:
        raise DomainError(f"sigma requires n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            e = n // d
            if e != d:
                total += e
        d += 1
    return total


def sigma_table(n_max: int) -> list[int]:
    """sigma(0..n_max) by an additive sieve; entry 0 is 0."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    return [int(v) for v in kernels.sigma_sieve(n_max)]


# ---------------------------------------------------------------------------
# truncated rational power series


@dataclass(frozen=True)
class RationalSeries:
    """Power series c_0 + c_1 z + ... + c_N z^N with exact coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def from_values(cls, values: Sequence) -> "RationalSeries":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, m: int) -> Fraction:
        return self.coefficients[m]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.truncation_order, other.truncation_order)
        return RationalSeries(
            tuple(self[i] + other[i] for i in range(order + 1))
        )

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.truncation_order, other.truncation_order)
        # scale to integer vectors, convolve, then divide once per coefficient
        a, da = _common_denominator(self.coefficients[: order + 1])
        b, db = _common_denominator(other.coefficients[: order + 1])
        nz_b = [(j, v) for j, v in enumerate(b) if v]
        out = [0] * (order + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in nz_b:
                if i + j > order:
                    break
                out[i + j] += ai * bj
        den = da * db
        return RationalSeries(tuple(Fraction(c, den) for c in out))

    def __pow__(self, k: int) -> "RationalSeries":
        if k < 0:
            raise DomainError("negative powers are not supported")
        result = RationalSeries.one(self.truncation_order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def _common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def lambert_series(n_max: int) -> RationalSeries:
    """Series of -ln((z;z)_inf): the coefficient of z^m is sigma(m)/m."""
    if n_max < 1:
        raise DomainError(f"lambert_series requires N >= 1, got {n_max}")
    s = sigma_table(n_max)
    return RationalSeries(
        (Fraction(0),) + tuple(Fraction(s[m], m) for m in range(1, n_max + 1))
    )


# ---------------------------------------------------------------------------
# d'Arcais numbers


@dataclass(frozen=True)
class DArcaisTriangle:
    """Integers A(2, n, k) for 1 <= k <= n <= max_n.

    ``rows[n - 1][k - 1]`` holds A(2, n, k).
    """

    max_n: int
    rows: tuple[tuple[int, ...], ...]

    def row(self, n: int) -> tuple[int, ...]:
        self._check(n, 1)
        return self.rows[n - 1]

    def entry(self, n: int, k: int) -> int:
        self._check(n, k)
        return self.rows[n - 1][k - 1]

    def a(self, n: int, k: int) -> Fraction:
        """The normalized coefficient k! A(2,n,k) / n!."""
        return Fraction(math.factorial(k) * self.entry(n, k), math.factorial(n))

    def csv_lines(self) -> Iterator[str]:
        for n, row in enumerate(self.rows, start=1):
            for k, value in enumerate(row, start=1):
                yield f"{n},{k},{value}"

    def _check(self, n: int, k: int) -> None:
        if not 1 <= n <= self.max_n:
            raise DomainError(f"n={n} outside the triangle (max_n={self.max_n})")
        if not 1 <= k <= n:
            raise DomainError(f"k={k} must satisfy 1 <= k <= n={n}")


def darcais_triangle(n_max: int) -> DArcaisTriangle:
    """Rows 1..n_max of the d'Arcais triangle.

    Differentiating exp(x L(z)) in z gives n P_n = x sum_j sigma(j) P_{n-j};
    multiplied through by (n-1)! this is the integer recurrence

        A(n, k) = sum_j sigma(j) (n-1)!/(n-j)! A(n-j, k-1).
    """
    if n_max < 1:
        raise DomainError(f"darcais_triangle requires N >= 1, got {n_max}")
    s = sigma_table(n_max)
    # full[n][k] = A(2, n, k) with full[0] = [1] for P_0 = 1
    full: list[list[int]] = [[1]]
    for n in range(1, n_max + 1):
        row = [0] * (n + 1)
        falling = 1  # (n-1)! / (n-j)!
        for j in range(1, n + 1):
            w = s[j] * falling
            prev = full[n - j]
            for k in range(1, len(prev) + 1):
                pk = prev[k - 1]
                if pk:
                    row[k] += w * pk
            falling *= n - j
        full.append(row)
    return DArcaisTriangle(n_max, tuple(tuple(r[1:]) for r in full[1:]))


def darcais_bell(n: int, k: int) -> int:
    """A(2, n, k) as n!/k! [z^n] L(z)^k, by binary powering of the series."""
    _check_nk(n, k)
    c = (lambert_series(n) ** k)[n]
    value = c * math.factorial(n) / math.factorial(k)
    if value.denominator != 1:
        raise ArithmeticError(f"Bell transform gave a non-integer at ({n}, {k})")
    return value.numerator


def darcais_bell_table(n_max: int) -> list[list[int]]:
    """All A(2, n, k), n <= n_max, from successive powers L^k.

    Same derivation as :func:`darcais_bell` but shares the powers across k.
    """
    base = lambert_series(n_max)
    table = [[0] * n for n in range(1, n_max + 1)]
    power = base
    for k in range(1, n_max + 1):
        if k > 1:
            power = power * base
        for n in range(k, n_max + 1):
            v = power[n] * math.factorial(n) / math.factorial(k)
            if v.denominator != 1:
                raise ArithmeticError(f"non-integer Bell value at ({n}, {k})")
            table[n - 1][k - 1] = v.numerator
    return table


def _check_nk(n: int, k: int, k_lo: int = 1, k_hi_offset: int = 0) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not k_lo <= k <= n - k_hi_offset:
        raise DomainError(f"k={k} out of range [{k_lo}, {n - k_hi_offset}] for n={n}")


def _triangle_for(n: int, triangle: DArcaisTriangle | None) -> DArcaisTriangle:
    if triangle is None or triangle.max_n < n:
        return darcais_triangle(n)
    return triangle


def a_coeff(n: int, k: int, triangle: DArcaisTriangle | None = None) -> Fraction:
    """a(n, k) = k! A(2,n,k) / n! as an exact rational."""
    _check_nk(n, k)
    return _triangle_for(n, triangle).a(n, k)


# ---------------------------------------------------------------------------
# logs of huge rationals


def ln_rational(q) -> float:
    """Natural log of a positive rational, safe for huge numerators.

    Writes q = 2^e m with m in [1, 2); m is a correctly rounded float and the
    power of two is added with a split ln 2.
    """
    q = Fraction(q)
    if q <= 0:
        raise DomainError(f"ln_rational requires q > 0, got {q}")
    num, den = q.numerator, q.denominator
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        scaled_num, scaled_den = num, den << e
    else:
        scaled_num, scaled_den = num << -e, den
    if scaled_num < scaled_den:
        e -= 1
        scaled_num <<= 1
    m = scaled_num / scaled_den  # int / int is correctly rounded
    return e * _LN2_HI + (math.log(m) + e * _LN2_LO)


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class PartitionTable:
    max_n: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def partition_table(n_max: int) -> PartitionTable:
    """p(0..n_max) from Euler's pentagonal-number recurrence."""
    if n_max < 0:
        raise DomainError(f"partition_table requires N >= 0, got {n_max}")
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            g2 = g1 + j
            term = p[n - g1] + (p[n - g2] if g2 <= n else 0)
            total += term if j % 2 else -term
            j += 1
        p[n] = total
    return PartitionTable(n_max, tuple(p))


def iter_partitions(n: int) -> Iterator[list[int]]:
    """Every partition of n as an ascending list (Kelleher's accel_asc)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n == 0:
        yield []
        return
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield a[: k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[: k + 1]


def count_partitions_bruteforce(n: int) -> int:
    return sum(1 for _ in iter_partitions(n))


# ---------------------------------------------------------------------------
# brute-force compositions and derived statistics


def composition_check(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Return (sum over compositions of prod sigma(nu)/nu, a(n, k)).

    Enumerates all C(n-1, k-1) compositions of n into k positive parts.
    The average over compositions is the sum divided by C(n-1, k-1).
    """
    _check_nk(n, k)
    if n > MAX_COMPOSITION_N:
        raise SizeError(
            f"composition enumeration is capped at n={MAX_COMPOSITION_N}, got n={n}"
        )
    ratio = [Fraction(0)] + [Fraction(sigma(m), m) for m in range(1, n + 1)]
    total = Fraction(0)
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        prod = Fraction(1)
        for lo, hi in zip(bounds, bounds[1:]):
            prod *= ratio[hi - lo]
        total += prod
    return total, a_coeff(n, k)


def asymmetry_stat(n: int, k: int, triangle: DArcaisTriangle | None = None) -> Fraction:
    """(a(n,k) - a(n,n+1-k)) / (a(n,k) + a(n,n+1-k))."""
    _check_nk(n, k)
    tri = _triangle_for(n, triangle)
    left, right = tri.a(n, k), tri.a(n, n + 1 - k)
    return (left - right) / (left + right)


def logconcavity_ratio(n: int, k: int, triangle: DArcaisTriangle | None = None) -> Fraction:
    """Exact a(n,k)^2 / (a(n,k-1) a(n,k+1))."""
    _check_nk(n, k, k_lo=2, k_hi_offset=1)
    tri = _triangle_for(n, triangle)
    # the n! factors cancel: k A_k^2 / ((k+1) A_{k-1} A_{k+1})
    a_k = tri.entry(n, k)
    return Fraction(
        k * a_k * a_k, (k + 1) * tri.entry(n, k - 1) * tri.entry(n, k + 1)
    )


def logconcavity_lhs(n: int, k: int, triangle: DArcaisTriangle | None = None) -> float:
    return ln_rational(logconcavity_ratio(n, k, triangle))
