import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darcais import eta_eval as ev
from darcais.errors import DomainError, RangeError

ZETA2 = math.pi**2 / 6
GRID = np.logspace(-3, math.log10(50), 200)


def test_large_y_expansion():
    q = math.exp(-30)
    assert abs(ev.eval_F(30.0) - (q + 1.5 * q * q)) <= 1e-28


def test_first_derivative_large_y():
    # n=1 term -q/(1-q) plus n=2 term -2q^2/(1-q^2): -q - 3q^2 + O(q^3)
    q = math.exp(-30)
    assert abs(ev.eval_F1(30.0) - (-q - 3 * q * q)) <= 1e-28


def test_self_dual_point():
    y = 2 * math.pi
    assert ev._direct(y)[0] == pytest.approx(ev.modular_F(y), rel=1e-13)
    assert ZETA2 / y == pytest.approx(math.pi / 12, rel=1e-15)


@pytest.mark.parametrize("y", [0.01, 0.3, 0.49, 0.5, 0.51, 1.0, 2 * math.pi, 12.0, 40.0])
def test_against_mpmath(mp_F, y):
    with mpmath.workdps(40):
        ref = [mp_F(y), mpmath.diff(mp_F, y, 1), mpmath.diff(mp_F, y, 2)]
    got = ev.eval_all(y)
    assert got[0] == pytest.approx(float(ref[0]), rel=1e-13)
    assert got[1] == pytest.approx(float(ref[1]), rel=1e-12)
    assert got[2] == pytest.approx(float(ref[2]), rel=1e-12)


@pytest.mark.parametrize("y", [0.02, 0.4, 0.7, 3.0])
def test_second_derivative_against_finite_differences(y):
    h = y * 1e-4
    fd = (ev.eval_F1(y + h) - ev.eval_F1(y - h)) / (2 * h)
    assert ev.eval_F2(y) == pytest.approx(fd, rel=1e-7)


def test_small_y_limits():
    ys = [1e-2, 1e-4, 1e-6]
    gaps0 = [abs(y * ev.eval_F(y) - ZETA2) for y in ys]
    gaps1 = [abs(-(y**2) * ev.eval_F1(y) - ZETA2) for y in ys]
    gaps2 = [abs(y**3 * ev.eval_F2(y) - 2 * ZETA2) for y in ys]
    for gaps in (gaps0, gaps1, gaps2):
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-4


def test_modular_examples():
    y = 0.01
    head = ZETA2 / y + math.log(y) / 2 - math.log(2 * math.pi) / 2 - y / 24
    assert ev.modular_F(y) == pytest.approx(head, rel=1e-15)
    assert ev.modular_F(40.0) == pytest.approx(ev.eval_F(40.0), abs=1e-13)


def test_modular_identity_grid():
    for y in GRID:
        f = ev.eval_F(y)
        assert abs(f - ev.modular_F(y)) <= 1e-12 * max(1.0, f)


def test_convexity_and_monotonicity_grid():
    for y in GRID:
        p = ev.eta_point(y)
        assert p.F > 0 and p.F1 < 0 and p.F2 > 0 and p.V > 0
        # K = 1 - 3e^{-y} + ... rounds to 1.0 once e^{-y} < 2^-54
        assert 0 < p.K < 1 if y <= 30 else 0 < p.K <= 1


def test_drift_is_decreasing_and_above_one():
    drift = np.array([-ev.eval_F1(y) / ev.eval_F(y) for y in GRID])
    resolved = GRID <= 30  # beyond this, drift - 1 is below one ulp
    assert np.all(np.diff(drift[resolved]) < 0)
    assert np.all(drift[resolved] > 1)
    assert np.all(drift >= 1)
    assert drift[0] * GRID[0] == pytest.approx(1, rel=1e-2)
    assert drift[-1] == pytest.approx(1, rel=1e-15)


def test_domain_errors():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(DomainError):
            ev.eval_F(bad)
    with pytest.raises(DomainError):
        ev.modular_F(0.0)


@pytest.mark.parametrize("y", [0.01, 0.5, 3.0])
def test_rho_normalized(y):
    n_max = math.ceil(45 / y) + 10
    assert math.fsum(ev.rho(np.arange(1, n_max + 1), y)) == pytest.approx(1, abs=1e-12)
    assert ev.rho(1, y) == pytest.approx(math.exp(-y) / ev.eval_F(y), rel=1e-14)


# --- complex argument


@pytest.mark.parametrize("y", [1e-3, 0.05, 0.6, 5.0])
def test_complex_on_real_axis(y):
    assert ev.eval_F_complex(complex(y, 0)) == pytest.approx(ev.eval_F(y), rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(1e-3, 5), st.floats(-10, 10))
def test_complex_conjugate_symmetry(y, theta):
    a = ev.eval_F_complex(complex(y, -theta))
    b = ev.eval_F_complex(complex(y, theta))
    assert abs(a - b.conjugate()) <= 1e-14 * ev.eval_F(y)
    assert abs(a) <= ev.eval_F(y) * (1 + 1e-14)


def _mp_complex_F(w, n_terms):
    s = [0] + [int(v) for v in ev.kernels.sigma_sieve(n_terms)[1:]]
    with mpmath.workdps(30):
        ww = mpmath.mpc(w.real, w.imag)
        return complex(mpmath.fsum(mpmath.mpf(s[n]) / n * mpmath.exp(-n * ww) for n in range(1, n_terms + 1)))


@pytest.mark.parametrize("w", [0.05 - 0.3j, 0.2 + 2.0j, 1.0 - 3.0j])
def test_complex_against_mpmath(w):
    n_terms = ev.complex_terms(w.real)
    got = ev.eval_F_complex(w)
    ref = _mp_complex_F(w, n_terms)
    assert abs(got - ref) <= 1e-13 * ev.eval_F(w.real)


def test_complex_floor():
    with pytest.raises(RangeError):
        ev.eval_F_complex(complex(5e-5, 1.0))
    assert ev.complex_terms(1e-4) == 450000


def test_farey_spikes():
    # |F(y - i theta)|^2/F(y)^2 peaks at rational multiples of 2 pi, dips between
    y = 1e-3
    f2 = ev.eval_F(y) ** 2
    def ratio(th):
        return abs(ev.eval_F_complex(complex(y, -th), n_max=100_000)) ** 2 / f2
    for peak in (math.pi, 2 * math.pi / 3, math.pi / 2):
        assert ratio(peak) > 100 * ratio(peak + 0.05)
    assert ratio(math.pi) > ratio(2 * math.pi / 3) > ratio(math.pi / 2)


# --- beta bound


def test_beta_zero_and_even():
    assert ev.beta_bound(0.3, 0.0) == 0.0
    th = np.linspace(0.01, 3.1, 50)
    assert np.allclose(ev.beta_bound(0.3, th), ev.beta_bound(0.3, -th), rtol=0, atol=0)


@pytest.mark.parametrize("y", [1e-3, 0.1, 1.0, 4.0])
def test_beta_monotone_on_half_circle(y):
    b = ev.beta_bound(y, np.linspace(1e-6, math.pi - 1e-6, 400))
    assert np.all(np.diff(b) >= 0)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 3), st.floats(-30, 30))
def test_beta_scaled_lower_bound(y, vartheta):
    if abs(y * vartheta) >= math.pi:
        return
    lhs = ev.beta_bound(y, y * vartheta)
    rhs = (2 * ev.eval_F(2 * y) / (y * ev.eval_F(y) ** 2)) * vartheta**2 / (
        math.pi**2 * y**-2 * math.sinh(y / 2) ** 2 + vartheta**2
    )
    assert lhs >= rhs * (1 - 1e-12)


def test_beta_small_y_limit():
    # F(2y)/F(y)^2 * coth(y/2) -> 1/zeta(2); the angular factor -> vt^2/(1+vt^2)
    for vt in (0.5, 1.0, 3.0):
        limit = vt**2 / (ZETA2 * (1 + vt**2))
        assert ev.beta_bound(1e-5, 1e-5 * vt) == pytest.approx(limit, rel=1e-3)


def test_beta_never_exceeds_one():
    for y in (1e-5, 1e-3, 0.1, 1.0, 10.0):
        assert np.all(ev.beta_bound(y, np.linspace(-math.pi, math.pi, 301)) <= 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([1e-3, 1e-2, 0.1, 1.0, 3.0]), st.floats(-math.pi, math.pi))
def test_minor_arc_bound_random(y, theta):
    lhs = 1 - abs(ev.eval_F_complex(complex(y, -theta))) ** 2 / ev.eval_F(y) ** 2
    assert lhs >= ev.beta_bound(y, theta) - 1e-12


# --- scaled Taylor coefficients


def test_taylor_W2_large_y_by_finite_differences():
    # f + y = log1p(G) is smooth and cancellation-free at y = 30
    y, h = 30.0, 1e-2
    g = ev.log_F_plus_y
    fd = (g(y + h) - 2 * g(y) + g(y - h)) / h**2
    assert ev.taylor_W(2, y) == pytest.approx(y * y * fd, rel=1e-4)


def test_log_F_plus_y_matches_naive_where_safe():
    for y in (0.6, 1.0, 3.0):
        assert ev.log_F_plus_y(y) == pytest.approx(y + math.log(ev.eval_F(y)), rel=1e-13)


def test_taylor_limits_are_cumulants():
    # f = ln F ~ ln zeta(2) - ln y, so y^r f^(r) -> (-1)^r (r-1)!
    ys = [1e-2, 3e-3, 1e-3]
    for r, limit in ((2, 1.0), (3, -2.0), (4, 6.0)):
        gaps = [abs(ev.taylor_W(r, y) - limit) for y in ys]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-3


def test_moment_ratio_limit_is_two():
    # the value 2 belongs to y^2 F''/F, not to y^2 (ln F)''
    assert 1e-6**2 * ev.eval_F2(1e-6) / ev.eval_F(1e-6) == pytest.approx(2, rel=1e-4)


@pytest.mark.parametrize("y", [0.01, 0.5, 2.0])
def test_taylor_W3_against_mpmath(mp_F, y):
    with mpmath.workdps(40):
        ref = y**3 * mpmath.diff(lambda t: mpmath.log(mp_F(t)), y, 3)
    assert ev.taylor_W(3, y) == pytest.approx(float(ref), rel=1e-6)


def test_taylor_unsupported_order():
    with pytest.raises(RangeError):
        ev.taylor_W(5, 0.1)
