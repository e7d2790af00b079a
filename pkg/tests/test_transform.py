import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from whitortho.errors import DomainError, OverflowRisk
from whitortho.specfun import abs_gamma_half_plus_imu, kl_normalization
from whitortho.transform import (
    GRID_HI,
    GRID_LO,
    POINTS_PER_DECADE,
    RadialFunction,
    SpectralFunction,
    analyze,
    kl_transform_pair,
    log_grid,
    round_trip,
    synthesize,
    synthesize_grid,
)
from whitortho.specfun import gamma_pair_product
from whitortho.whittaker import WhittakerOrder, small_x_coefficients, whittaker_w


def gaussian_f(lo=0.5, hi=4.0, n=71, center=2.0, width=0.3):
    return SpectralFunction.from_callable(lambda m: math.exp(-0.5 * ((m - center) / width) ** 2), lo, hi, n)


# Radial test functions vanishing like x at 0, so the x-integral converges
# absolutely at the origin (g ~ sqrt(x) would leave x**-1 cos(mu ln x) there).
def g1(x):
    return x * math.exp(-0.5 * x)


def g2(x):
    return x * math.exp(-x) * math.cos(math.log(x))


# --- spectral and radial containers ---------------------------------------


def test_spectral_validation():
    with pytest.raises(ValueError):
        SpectralFunction(np.array([1.0, 1.0, 2.0]), np.zeros(3))
    with pytest.raises(ValueError):
        SpectralFunction(np.array([1.0, 2.0]), np.array([0.0, math.nan]))
    with pytest.raises(DomainError):
        SpectralFunction(np.array([-1.0, 1.0]), np.zeros(2))
    with pytest.raises(ValueError):
        SpectralFunction(np.array([1.0, 2.0]), np.zeros(2), interpolation="spline")


def test_spectral_zero_outside_support():
    f = gaussian_f()
    assert f(0.49) == 0.0 and f(4.01) == 0.0
    assert f(2.0) == pytest.approx(1.0)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 4))
def test_spectral_interpolation_exact_for_quadratics(c0, c1, c2, mu):
    q = lambda m: c0 + c1 * m + c2 * m * m
    grid = np.array([0.5, 0.9, 1.2, 2.0, 2.1, 3.3, 4.0])
    f = SpectralFunction(grid, q(grid))
    assert f(mu) == pytest.approx(q(mu), abs=1e-12)


def test_spectral_arithmetic():
    f = gaussian_f()
    s = f + f.scaled(2.0)
    assert s(1.77) == pytest.approx(3 * f(1.77), rel=1e-15)
    assert f.scaled(0.0).is_zero()


def test_radial_interpolation():
    x = np.geomspace(1e-4, 30, 200)
    h = lambda t: math.sqrt(t) * math.exp(-0.5 * t)
    r = RadialFunction(x, np.array([h(t) for t in x]))
    for t in (1e-3, 0.37, 5.0):
        assert r(t) == pytest.approx(h(t), rel=1e-6)
    assert r(50.0) == 0.0
    with pytest.raises(ValueError):
        RadialFunction(np.array([0.0, 1.0]), np.zeros(2))


def test_log_grid_default():
    g = log_grid()
    assert g[0] == pytest.approx(GRID_LO) and g[-1] == pytest.approx(GRID_HI)
    assert len(g) == math.ceil(POINTS_PER_DECADE * math.log10(GRID_HI / GRID_LO)) + 1


# --- synthesis ------------------------------------------------------------


def test_synthesize_zero():
    f = SpectralFunction(np.array([1.0, 2.0]), np.zeros(2))
    assert synthesize(f, 0.0, 1.0) == 0.0


def test_synthesize_support_guards():
    with pytest.raises(OverflowRisk):
        synthesize(SpectralFunction.from_callable(lambda m: 1.0, 1.0, 11.0, 5), 0.0, 1.0)
    with pytest.raises(DomainError):
        synthesize(gaussian_f(), 0.0, 0.0)


@pytest.mark.parametrize("x", [0.01, 1.0, 6.0])
def test_synthesize_narrow_bump(x):
    mu0, w = 1.6, 1e-3
    f = SpectralFunction.from_callable(
        lambda m: math.exp(-0.5 * ((m - mu0) / w) ** 2) / (w * math.sqrt(2 * math.pi)), mu0 - 8 * w, mu0 + 8 * w, 81
    )
    expected = mu0 * math.sinh(2 * math.pi * mu0) * whittaker_w(WhittakerOrder(0.3, mu0), x).value
    assert synthesize(f, 0.3, x) == pytest.approx(expected, rel=1e-3)


def test_synthesize_gaussian_fine_grid_oracle():
    f = gaussian_f()
    # Gauss-Legendre on every interpolation panel with mpmath kernels: no adaptivity shared
    nodes, weights = np.polynomial.legendre.leggauss(12)
    total = 0.0
    with mpmath.workdps(20):
        for lo, hi in zip(f.mu_grid[:-1], f.mu_grid[1:]):
            for t, wt in zip(nodes, weights):
                m = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t
                k = float(mpmath.whitw(0, 1j * m, 1.0).real)
                total += 0.5 * (hi - lo) * wt * m * math.sinh(2 * math.pi * m) * k * f(m)
    assert synthesize(f, 0.0, 1.0, 1e-12) == pytest.approx(total, rel=1e-10)


def test_synthesize_linear():
    f1 = gaussian_f()
    f2 = SpectralFunction(f1.mu_grid, np.sin(f1.mu_grid) * f1.values)
    for x in (0.05, 1.0, 5.0):
        a = synthesize(f1 + f2.scaled(2.0), 0.5, x, 1e-13)
        b = synthesize(f1, 0.5, x, 1e-13) + 2 * synthesize(f2, 0.5, x, 1e-13)
        assert a == pytest.approx(b, rel=1e-10)


def test_synthesize_grid_zero_and_shape():
    f = SpectralFunction(np.array([1.0, 2.0]), np.zeros(2))
    r = synthesize_grid(f, 0.0, [0.1, 1.0, 2.0])
    assert np.all(r.values == 0)
    r = synthesize_grid(gaussian_f(), 0.0, [0.1, 1.0, 2.0])
    assert r.values[1] == pytest.approx(synthesize(gaussian_f(), 0.0, 1.0), rel=1e-8)


# --- analysis -------------------------------------------------------------


def test_analyze_zero():
    r = analyze(lambda x: 0.0, 0.0, 1.5)
    assert r.value == 0.0 and r.head_remainder == 0.0


def test_analyze_linear():
    g = lambda x: g1(x) + 2 * g2(x)
    for kappa, mu in ((0.0, 1.3), (0.5, 2.2)):
        a = analyze(g, kappa, mu, 1e-12).value
        b = analyze(g1, kappa, mu, 1e-12).value + 2 * analyze(g2, kappa, mu, 1e-12).value
        assert a == pytest.approx(b, rel=1e-10)


@given(st.floats(-0.8, 0.4), st.floats(0.3, 4))
def test_analyze_even_in_mu(kappa, mu):
    a = analyze(g1, kappa, mu, 1e-10).value
    b = analyze(g1, kappa, -mu, 1e-10).value
    assert b == pytest.approx(a, rel=1e-9, abs=1e-14)


def test_analyze_against_mpmath():
    kappa, mu = 0.3, 1.4
    r = analyze(g1, kappa, mu, 1e-10)
    with mpmath.workdps(20):
        integrand = lambda u: mpmath.exp(-u) * mpmath.whitw(kappa, 1j * mu, mpmath.exp(u)).real * g1(float(mpmath.exp(u)))
        body = mpmath.quad(integrand, mpmath.linspace(math.log(1e-6), math.log(80.0), 40), method="gauss-legendre")
        pref = (mpmath.gamma(0.5 - kappa + 1j * mu) * mpmath.gamma(0.5 - kappa - 1j * mu)).real / mpmath.pi**2
    assert r.value == pytest.approx(float(pref * body), rel=1e-8)
    # the head below xi_floor is reported, not added
    assert 0 <= r.head_remainder <= r.abs_error


def test_analyze_head_remainder_bounds_truncation():
    # move the floor up so the omitted head is large enough to measure
    mu = 1.2
    near = analyze(g1, 0.0, mu, 1e-11, xi_floor=1e-4)
    far = analyze(g1, 0.0, mu, 1e-11, xi_floor=1e-12)
    assert abs(near.value - far.value) <= near.head_remainder


# --- round trips ----------------------------------------------------------


def test_round_trip_zero():
    f = SpectralFunction(np.array([1.0, 2.0]), np.zeros(2))
    assert [r.value for r in round_trip(f, 0.0, [1.5])] == [0.0]
    assert kl_transform_pair(f, 1.5) == 0.0


def test_kl_constant_bookkeeping():
    # analysis prefactor x synthesis weight x overlap constant = 1
    for mu in (0.7, 2.0, 3.1):
        prefactor = abs_gamma_half_plus_imu(mu) ** 2 / math.pi**2
        weight = mu * math.sinh(2 * math.pi * mu)
        assert prefactor * weight * kl_normalization(mu) / math.pi == pytest.approx(1.0, rel=1e-14)


@pytest.mark.slow
@pytest.mark.parametrize("kappa", [0.0, 0.5])
def test_round_trip_recovers_gaussian(kappa):
    f = gaussian_f()
    mus = [1.7, 2.0, 2.3]
    for r, mu in zip(round_trip(f, kappa, mus), mus):
        assert abs(r.value - f(mu)) <= 0.01 * f(mu)


@pytest.mark.slow
def test_kl_path_matches_whittaker_path():
    f = gaussian_f()
    kl = kl_transform_pair(f, 2.0)
    wh = round_trip(f, 0.0, [2.0])[0].value
    assert abs(kl - wh) <= 1e-6 * abs(wh)


def _small_xi_inverse(values_at, mu, big_l, lo=0.5, hi=4.0, panels=560):
    # analysis of synthesize(f) with the x-integral cut at exp(-big_l), from
    # the small-xi trigonometric form of the truncated overlap (kappa = 0)
    t, w = np.polynomial.legendre.leggauss(40)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    m = (0.5 * (edges[:-1] + edges[1:])[:, None] + half[:, None] * t).ravel()
    wt = (half[:, None] * w).ravel()
    cs = [small_x_coefficients(WhittakerOrder(0.0, x)) for x in m]
    a2, b2 = np.array([c.A for c in cs]), np.array([c.B for c in cs])
    c = small_x_coefficients(WhittakerOrder(0.0, mu))
    a, b = c.A, c.B
    dm, sm = mu - m, mu + m
    o = 0.5 * ((a * a2 + b * b2) * np.sin(big_l * dm) / dm + (a * a2 - b * b2) * np.sin(big_l * sm) / sm
               + (a * b2 - b * a2) * np.cos(big_l * dm) / dm - (a * b2 + b * a2) * np.cos(big_l * sm) / sm)
    dens = wt * m * np.sinh(2 * np.pi * m) * values_at(m)
    return gamma_pair_product(0.0, mu).real / math.pi**2 * float(np.sum(dens * o))


def test_sampled_input_recovers_local_average_not_node_value():
    # For L < 2 pi / h the cut-off inverse cannot resolve the grid, so at a
    # node it returns the smooth function plus an O(h^4) mean of the
    # interpolation error; the smooth function itself has no such plateau.
    smooth = lambda m: np.exp(-0.5 * ((np.asarray(m) - 2.0) / 0.3) ** 2)
    assert abs(_small_xi_inverse(smooth, 2.0, 50.0) - 1.0) < 1e-7
    plateau = {}
    for n in (71, 141):
        f = gaussian_f(n=n)
        at_30, at_60 = (_small_xi_inverse(f, 2.0, big_l) - 1.0 for big_l in (30.0, 60.0))
        assert abs(at_30 - at_60) < 0.02 * abs(at_30)
        plateau[n] = at_30
    assert 12.0 < plateau[71] / plateau[141] < 20.0
    assert abs(plateau[71]) > 1e-5
