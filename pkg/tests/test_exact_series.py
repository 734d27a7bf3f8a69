import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from darcais import exact_series as es
from darcais.errors import DomainError, SizeError


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 12), (12, 28)])
def test_sigma_examples(n, expected):
    assert es.sigma(n) == expected


def test_sigma_rejects_zero():
    with pytest.raises(DomainError):
        es.sigma(0)


@given(st.integers(1, 300), st.integers(1, 300))
def test_sigma_multiplicative(m, n):
    if math.gcd(m, n) == 1:
        assert es.sigma(m * n) == es.sigma(m) * es.sigma(n)


def test_sigma_table_matches_single():
    table = es.sigma_table(500)
    assert table[0] == 0
    assert all(table[n] == es.sigma(n) for n in range(1, 501))


def test_lambert_series_coefficients():
    assert list(es.lambert_series(2)) == [0, 1, Fraction(3, 2)]
    assert es.lambert_series(3)[3] == Fraction(4, 3)
    assert es.lambert_series(4)[4] == Fraction(7, 4)


def test_series_truncation_uses_min_order():
    a = es.RationalSeries.from_values([1, 1, 1, 1])
    b = es.RationalSeries.from_values([1, 2])
    assert (a * b).truncation_order == 1
    assert (a + b).truncation_order == 1


fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)
series = st.lists(fractions, min_size=4, max_size=4).map(es.RationalSeries.from_values)


@settings(max_examples=50)
@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=30)
@given(series, st.integers(0, 7))
def test_binary_power_matches_repeated_product(a, k):
    expected = es.RationalSeries.one(a.truncation_order)
    for _ in range(k):
        expected = expected * a
    assert a**k == expected


def test_triangle_small_rows():
    tri = es.darcais_triangle(4)
    assert tri.rows == ((1,), (3, 1), (8, 9, 1), (42, 59, 18, 1))


def test_triangle_row3_by_hand_expansion():
    # exp(xL) to z^3: P_3 = (4/3) x + (3/2) x^2 + x^3/6
    p3 = [Fraction(4, 3), Fraction(3, 2), Fraction(1, 6)]
    assert list(es.darcais_triangle(3).row(3)) == [c * 6 for c in p3]


def test_triangle_boundary_rows(triangle150):
    for n in range(1, 151):
        assert triangle150.entry(n, n) == 1
        assert triangle150.a(n, 1) == Fraction(es.sigma(n), n)
        assert all(v > 0 for v in triangle150.row(n))


def test_row_sums_count_commuting_pairs(triangle150):
    # sum_k A(2,n,k) = n! p(n), the number of commuting pairs in S_n
    p = es.partition_table(150)
    for n in (1, 5, 30, 150):
        assert sum(triangle150.row(n)) == math.factorial(n) * p[n]


def test_triangle_equals_bell_oracle():
    tri = es.darcais_triangle(40)
    assert [list(r) for r in tri.rows] == es.darcais_bell_table(40)


@pytest.mark.parametrize("n, k", [(3, 2), (7, 3), (12, 5), (25, 11), (40, 17)])
def test_single_entry_bell_binary_powering(n, k):
    assert es.darcais_bell(n, k) == es.darcais_triangle(n).entry(n, k)


def test_bell_examples():
    assert es.darcais_bell(3, 2) == 9
    assert es.darcais_bell(4, 1) == 42
    assert all(es.darcais_bell(n, n) == 1 for n in range(1, 12))


def test_a_coeff_examples():
    assert es.a_coeff(3, 2) == 3
    assert es.a_coeff(9, 9) == 1
    assert es.a_coeff(10, 1) == Fraction(18, 10)


def test_nk_validation():
    with pytest.raises(DomainError):
        es.a_coeff(3, 4)
    with pytest.raises(DomainError):
        es.darcais_bell(3, 0)
    with pytest.raises(DomainError):
        es.logconcavity_lhs(5, 1)


def _mp_ln(q, bits=200):
    with mpmath.workprec(bits):
        return mpmath.log(mpmath.mpf(q.numerator)) - mpmath.log(mpmath.mpf(q.denominator))


def test_ln_rational_examples(triangle150):
    assert es.ln_rational(1) == 0.0
    assert es.ln_rational(Fraction(2**100)) == pytest.approx(100 * math.log(2), abs=1e-13)
    q = triangle150.a(150, 75)
    assert abs(es.ln_rational(q) - float(_mp_ln(q))) <= 1e-12


@settings(max_examples=200)
@given(st.integers(1, 10**400), st.integers(1, 10**400))
def test_ln_rational_against_200_bit(num, den):
    q = Fraction(num, den)
    assert abs(es.ln_rational(q) - float(_mp_ln(q))) <= 1e-12


def test_ln_rational_rejects_nonpositive():
    with pytest.raises(DomainError):
        es.ln_rational(0)
    with pytest.raises(DomainError):
        es.ln_rational(Fraction(-1, 3))


def test_partition_examples():
    p = es.partition_table(100)
    assert p[0] == 1
    assert p[5] == 7
    assert p[100] == 190569292
    assert all(p[n] < p[n + 1] for n in range(1, 100))


def test_partitions_of_five_enumerated():
    parts = sorted(tuple(x) for x in es.iter_partitions(5))
    assert parts == sorted([(5,), (1, 4), (2, 3), (1, 1, 3), (1, 2, 2), (1, 1, 1, 2), (1, 1, 1, 1, 1)])


def test_pentagonal_matches_enumeration():
    p = es.partition_table(60)
    assert all(p[n] == es.count_partitions_bruteforce(n) for n in range(61))


def test_composition_examples():
    assert es.composition_check(3, 2) == (3, 3)
    assert es.composition_check(8, 8)[0] == 1
    assert es.composition_check(9, 1)[0] == Fraction(es.sigma(9), 9)


def test_composition_identity_all_small():
    for n in range(1, 13):
        for k in range(1, n + 1):
            total, a = es.composition_check(n, k)
            assert total == a, (n, k)


def test_composition_size_cap():
    es.composition_check(14, 7)
    with pytest.raises(SizeError):
        es.composition_check(15, 3)


def test_asymmetry_examples(triangle150):
    assert es.asymmetry_stat(3, 1) == Fraction(1, 7)
    assert all(es.asymmetry_stat(n, (n + 1) // 2) == 0 for n in (3, 5, 11))
    assert es.asymmetry_stat(150, 75, triangle150) != 0


def test_logconcavity_lhs_example():
    assert es.logconcavity_ratio(3, 2) == Fraction(27, 4)
    assert es.logconcavity_lhs(3, 2) == pytest.approx(math.log(27 / 4), rel=1e-15)


def test_log_concavity_exact(triangle150):
    for n in range(3, 151):
        for k in range(2, n):
            assert es.logconcavity_ratio(n, k, triangle150) >= 1, (n, k)


def test_csv_lines():
    assert list(es.darcais_triangle(2).csv_lines()) == ["1,1,1", "2,1,3", "2,2,1"]
