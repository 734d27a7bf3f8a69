import mpmath
import pytest

from darcais import exact_series


@pytest.fixture(scope="session")
def triangle150():
    return exact_series.darcais_triangle(150)


@pytest.fixture(scope="session")
def mp_F():
    """F(y) = -ln((q;q)_inf), q = e^{-y}, at the caller's mpmath precision."""
    def F(y):
        return -mpmath.log(mpmath.qp(mpmath.exp(-mpmath.mpf(y))))
    return F
