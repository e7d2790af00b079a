import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from whitortho.errors import DomainError, PoleError
from whitortho.specfun import (
    MU_MIN,
    abs_gamma_2imu,
    abs_gamma_half_plus_imu,
    alt_normalization,
    complex_gamma,
    gamma_pair_product,
    kl_normalization,
    orthogonality_normalization,
)

from conftest import rel

strip_re = st.floats(-10, 10, allow_nan=False)
strip_im = st.floats(-20, 20, allow_nan=False)


def stirling_gamma(z, dps=40, shift_to=30):
    """Gamma(z) from the Stirling series at Re z >= shift_to, then the
    recurrence Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1))."""
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        n = max(0, int(math.ceil(shift_to - float(z.real))))
        w = z + n
        s = (w - 0.5) * mpmath.log(w) - w + 0.5 * mpmath.log(2 * mpmath.pi)
        for k in range(1, 20):
            b = mpmath.bernoulli(2 * k)
            s += b / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
        g = mpmath.exp(s)
        for k in range(n):
            g /= z + k
        return complex(g)


# --- complex_gamma --------------------------------------------------------


def test_gamma_one():
    assert complex_gamma(1) == pytest.approx(1.0, rel=1e-15)


def test_gamma_half():
    assert complex_gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-15)


def test_gamma_half_plus_i_modulus():
    assert abs(complex_gamma(0.5 + 1j)) ** 2 == pytest.approx(math.pi / math.cosh(math.pi), rel=1e-13)


def test_gamma_3_2i_against_stirling_recurrence():
    ref = stirling_gamma(3 + 2j)
    assert rel(complex_gamma(3 + 2j), ref) <= 1e-13


def test_stirling_oracle_agrees_with_mpmath():
    # the oracle itself is checked against an unrelated implementation
    assert rel(stirling_gamma(3 + 2j), complex(mpmath.gamma(3 + 2j))) <= 1e-14
    assert rel(stirling_gamma(-2.5 + 7j), complex(mpmath.gamma(-2.5 + 7j))) <= 1e-14


@given(strip_re, strip_im)
def test_gamma_matches_mpmath_on_strip(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return
    ref = complex(mpmath.gamma(mpmath.mpc(x, y)))
    assert rel(complex_gamma(z), ref) <= 1e-13


@given(strip_re, strip_im)
def test_gamma_conjugate_symmetry(x, y):
    z = complex(x, y)
    if round(x) <= 0 and abs(z - round(x)) < 1e-3:
        return
    assert rel(complex_gamma(z.conjugate()), complex_gamma(z).conjugate()) <= 1e-13


@given(strip_re, strip_im)
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    if round(x) <= 0 and abs(z - round(x)) < 1e-3:
        return
    assert rel(complex_gamma(z + 1), z * complex_gamma(z)) <= 1e-12


@pytest.mark.parametrize("n", [0, -1, -5])
def test_gamma_poles(n):
    with pytest.raises(PoleError):
        complex_gamma(n + 1e-13)


# --- modulus identities ---------------------------------------------------


def test_abs_gamma_2imu_examples():
    assert abs_gamma_2imu(0.5) == pytest.approx(math.sqrt(math.pi / math.sinh(math.pi)), rel=1e-15)
    assert abs_gamma_2imu(1.0) == pytest.approx(math.sqrt(math.pi / (2 * math.sinh(2 * math.pi))), rel=1e-15)
    assert rel(abs_gamma_2imu(0.25), abs(complex_gamma(0.5j))) <= 1e-12


def test_abs_gamma_half_examples():
    assert abs_gamma_half_plus_imu(0.0) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert abs_gamma_half_plus_imu(1.0) == pytest.approx(math.sqrt(math.pi / math.cosh(math.pi)), rel=1e-15)
    assert rel(abs_gamma_half_plus_imu(2.0), abs(complex_gamma(0.5 + 2j))) <= 1e-12


@given(st.floats(MU_MIN, 10))
def test_abs_gamma_2imu_identity(mu):
    assert rel(abs_gamma_2imu(mu), abs(complex_gamma(2j * mu))) <= 1e-12
    assert abs_gamma_2imu(-mu) == abs_gamma_2imu(mu)


@given(st.floats(0, 10))
def test_abs_gamma_half_identity(mu):
    assert rel(abs_gamma_half_plus_imu(mu), abs(complex_gamma(0.5 + 1j * mu))) <= 1e-12


def test_mu_floor():
    with pytest.raises(DomainError):
        abs_gamma_2imu(MU_MIN / 2)
    with pytest.raises(DomainError):
        orthogonality_normalization(0.0, 0.0)


# --- normalization --------------------------------------------------------


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
def test_kappa_zero_normalization_closed_form(mu):
    # Gamma(1/2 + i mu) Gamma(1/2 - i mu) = pi / cosh(pi mu) gives pi / (2 mu sinh(pi mu))
    n = orthogonality_normalization(0.0, mu)
    assert n.value == pytest.approx(math.pi / (2 * mu * math.sinh(math.pi * mu)), rel=1e-13)
    assert n.imag_residue <= 1e-12


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0, 3.3])
def test_kl_constant_is_pi_times_kappa_zero_normalization(mu):
    assert kl_normalization(mu) == pytest.approx(math.pi * orthogonality_normalization(0.0, mu).value, rel=1e-13)


def test_normalization_general_kappa_extended_precision():
    with mpmath.workdps(40):
        k, m = mpmath.mpf("0.3"), mpmath.mpf("1.2")
        ref = mpmath.pi**2 / (m * mpmath.sinh(2 * mpmath.pi * m)
                              * mpmath.gamma(0.5 - k + 1j * m) * mpmath.gamma(0.5 - k - 1j * m))
    n = orthogonality_normalization(0.3, 1.2)
    assert isinstance(n.value, float)
    assert n.value == pytest.approx(float(ref.real), rel=1e-13)
    assert n.imag_residue <= 1e-12


def test_normalization_complex_kappa():
    k, m = 0.5 + 0.2j, 1.3
    with mpmath.workdps(30):
        ref = complex(mpmath.pi**2 / (m * mpmath.sinh(2 * mpmath.pi * m)
                                      * mpmath.gamma(0.5 - k + 1j * m) * mpmath.gamma(0.5 - k - 1j * m)))
    assert rel(orthogonality_normalization(k, m).value, ref) <= 1e-12


@given(st.floats(-1.5, 0.45), st.floats(0.01, 8))
def test_normalization_even_in_mu(kappa, mu):
    a = orthogonality_normalization(kappa, mu).value
    b = orthogonality_normalization(kappa, -mu).value
    assert b == pytest.approx(a, rel=1e-13)


@given(st.floats(-1.5, 0.45), st.floats(0.01, 8))
def test_alt_normalization_identity(kappa, mu):
    n = orthogonality_normalization(kappa, mu).value
    assert rel(alt_normalization(kappa, mu), 2 * abs(mu) * n) <= 1e-12


def test_gamma_pair_pole():
    with pytest.raises(PoleError):
        gamma_pair_product(0.5, 1e-14)
