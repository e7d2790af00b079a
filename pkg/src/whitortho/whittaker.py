"""Whittaker functions of imaginary second index.

``W_{kappa, i mu}(x)`` is evaluated in one of two regimes:

* ``SERIES_CONNECTION``: the Gamma-weighted combination of the two
  first-kind functions ``M_{kappa, +-i mu}``, each a Kummer series.  Both
  terms grow like ``exp(x/2)`` while ``W`` decays like ``exp(-x/2)``, so the
  combination cancels.  When double precision cannot absorb the cancellation
  the same series are re-summed with mpmath at a working precision sized to
  the measured cancellation.
* ``ASYMPTOTIC``: ``x**kappa exp(-x/2) 2F0(1/2-kappa+i mu, 1/2-kappa-i mu;; -1/x)``
  with optimal truncation.

The switch point is the smallest ``x`` (not below ``2(|kappa|+|mu|+5)``)
where the truncated asymptotic series is good to ``ASYMPTOTIC_TARGET``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import AccuracyUnachievable, DivergenceError, DomainError, LossOfPrecision, PoleError
from .hypergeom import UNIT_ROUNDOFF, _asymptotic_terms, kummer_1f1
from .specfun import MU_MIN, complex_gamma

ORDER_POLE_TOL = 1e-10
# relative error of complex_gamma, folded into the connection coefficients
GAMMA_REL_ERR = 1e-14
# accuracy requested when the caller does not say
DEFAULT_RTOL = 1e-11
ASYMPTOTIC_TARGET = 1e-11
ACCURACY_LIMIT = 1e-8
SWITCH_STEP = 0.5


class Regime(enum.Enum):
    SERIES_CONNECTION = "series"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class WhittakerOrder:
    """The index pair (kappa, mu) of ``W_{kappa, i mu}``."""

    kappa: complex
    mu: float

    def __post_init__(self):
        object.__setattr__(self, "kappa", complex(self.kappa))
        object.__setattr__(self, "mu", float(self.mu))
        if not abs(self.mu) >= MU_MIN:
            raise DomainError(f"|mu| = {abs(self.mu)!r} is below MU_MIN = {MU_MIN}")
        for sign in (1, -1):
            z = 0.5 - self.kappa + sign * 1j * self.mu
            n = round(z.real)
            if n <= 0 and abs(z - n) < ORDER_POLE_TOL:
                raise PoleError(f"1/2 - kappa {'+' if sign > 0 else '-'} i mu = {z} is a Gamma pole")

    @property
    def is_real(self) -> bool:
        return self.kappa.imag == 0.0

    def flipped(self) -> "WhittakerOrder":
        return WhittakerOrder(self.kappa, -self.mu)


@dataclass(frozen=True)
class EvalOutcome:
    value: complex | float
    abs_error_estimate: float
    regime: Regime


@dataclass(frozen=True)
class SmallXCoefficients:
    A: complex | float
    B: complex | float


def _as_order(order, mu=None) -> WhittakerOrder:
    if isinstance(order, WhittakerOrder):
        return order
    return WhittakerOrder(order, mu)


@lru_cache(maxsize=4096)
def connection_coefficients(order: WhittakerOrder) -> tuple[complex, complex]:
    """Weights ``(c_minus, c_plus)`` with ``W = c_minus M_{-} + c_plus M_{+}``.

    ``c_minus = Gamma(2 i mu) / Gamma(1/2 - kappa + i mu)`` multiplies
    ``M_{kappa, -i mu}``; ``c_plus`` is the same with ``mu -> -mu``.
    """
    k, mu = order.kappa, order.mu
    c_minus = complex_gamma(2j * mu) / complex_gamma(0.5 - k + 1j * mu)
    c_plus = complex_gamma(-2j * mu) / complex_gamma(0.5 - k - 1j * mu)
    return c_minus, c_plus


def small_x_coefficients(order: WhittakerOrder) -> SmallXCoefficients:
    """Amplitudes of ``W ~ sqrt(x) [A cos(-mu ln x) + B sin(-mu ln x)]`` as x -> 0+."""
    c_minus, c_plus = connection_coefficients(order)
    a = c_plus + c_minus
    b = -1j * (c_plus - c_minus)
    if order.is_real:
        return SmallXCoefficients(a.real, b.real)
    return SmallXCoefficients(a, b)


def amplitude_scale(order: WhittakerOrder, x: float) -> float:
    """Typical size of W near ``x``, ignoring the exp(-x/2) decay.

    ``(|A| + |B|) sqrt(min(x, 4))``: the small-x envelope, frozen beyond
    x = 4.  Nested integrals multiply it by a relative tolerance to get an
    absolute one, so zeros of W and its exponentially small tail do not
    trigger extended precision.
    """
    c = small_x_coefficients(order)
    return (abs(c.A) + abs(c.B)) * math.sqrt(min(x, 4.0))


def _phase(mu: float, x: float) -> complex:
    # x**(i mu) with the real logarithm
    t = mu * math.log(x)
    return complex(math.cos(t), math.sin(t))


def _m_pieces(order: WhittakerOrder, sign: int, x: float, derivative: bool):
    """M_{kappa, sign i mu}(x), its derivative, and absolute error bounds."""
    mu = sign * order.mu
    a = 0.5 - order.kappa + 1j * mu
    b = 1.0 + 2j * mu
    pref = math.sqrt(x) * math.exp(-0.5 * x) * _phase(mu, x)
    f = kummer_1f1(a, b, x)
    m = pref * f.value
    m_err = abs(pref) * f.abs_error_estimate
    if not derivative:
        return m, m_err, 0j, 0.0
    g = kummer_1f1(a + 1.0, b + 1.0, x)
    ratio = a / b
    lead = (0.5 + 1j * mu) / x - 0.5
    dm = pref * (lead * f.value + ratio * g.value)
    dm_err = abs(pref) * (abs(lead) * f.abs_error_estimate + abs(ratio) * g.abs_error_estimate)
    return m, m_err, dm, dm_err


def whittaker_m(order: WhittakerOrder, sign: int, x: float) -> EvalOutcome:
    """First-kind function ``M_{kappa, sign * i mu}(x)`` for ``x > 0``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not x > 0.0:
        raise DomainError("whittaker_m needs x > 0")
    m, err, _, _ = _m_pieces(order, sign, float(x), False)
    return EvalOutcome(m, err, Regime.SERIES_CONNECTION)


def _series_double(order, x, derivative):
    c_minus, c_plus = connection_coefficients(order)
    mm, mm_err, dmm, dmm_err = _m_pieces(order, -1, x, derivative)
    mp_, mp_err, dmp, dmp_err = _m_pieces(order, 1, x, derivative)
    t1, t2 = c_minus * mm, c_plus * mp_
    w = t1 + t2
    scale = abs(t1) + abs(t2)
    w_err = scale * (GAMMA_REL_ERR + 4 * UNIT_ROUNDOFF) + abs(c_minus) * mm_err + abs(c_plus) * mp_err
    if not derivative:
        return w, w_err, scale, 0j, 0.0, 0.0
    d1, d2 = c_minus * dmm, c_plus * dmp
    dw = d1 + d2
    dscale = abs(d1) + abs(d2)
    dw_err = dscale * (GAMMA_REL_ERR + 4 * UNIT_ROUNDOFF) + abs(c_minus) * dmm_err + abs(c_plus) * dmp_err
    return w, w_err, scale, dw, dw_err, dscale


@lru_cache(maxsize=1024)
def _extended_coefficients(order: WhittakerOrder, digits: int):
    with mpmath.workdps(digits):
        k = mpmath.mpc(order.kappa)
        half = mpmath.mpf(0.5)
        out = []
        for sign in (-1, 1):
            m = mpmath.mpc(0, sign * order.mu)
            out.append(mpmath.gamma(-2 * m) / mpmath.gamma(half - k - m))
        return tuple(out)


def _series_extended(order, x, derivative, digits):
    """Connection formula re-evaluated with ``digits`` significant digits."""
    digits = 10 * int(math.ceil(digits / 10))  # coarse steps keep the coefficient cache small
    coeffs = _extended_coefficients(order, digits)
    with mpmath.workdps(digits):
        xm = mpmath.mpf(x)
        k = mpmath.mpc(order.kappa)
        half = mpmath.mpf(0.5)
        w = dw = mpmath.mpc(0)
        for sign, coeff in zip((-1, 1), coeffs):
            m = mpmath.mpc(0, sign * order.mu)
            a = half - k + m
            b = 1 + 2 * m
            pref = coeff * mpmath.power(xm, half + m) * mpmath.exp(-xm / 2)
            f = mpmath.hyp1f1(a, b, xm)
            w += pref * f
            if derivative:
                g = mpmath.hyp1f1(a + 1, b + 1, xm)
                dw += pref * (((half + m) / xm - half) * f + a / b * g)
        return complex(w), complex(dw)


def _series_eval(order, x, derivative, rtol, atol=0.0):
    """Connection formula in double precision, extended only if the tolerances demand it."""
    try:
        w, w_err, scale, dw, dw_err, dscale = _series_double(order, x, derivative)
    except LossOfPrecision:
        w, dw = _series_extended(order, x, derivative, 40)
        return w, 4 * UNIT_ROUNDOFF * abs(w), dw, 4 * UNIT_ROUNDOFF * abs(dw)
    if _acceptable((w, w_err, dw, dw_err), derivative, rtol, atol):
        return w, w_err, dw, dw_err
    # When the double result is pure noise (|w| <= w_err) its size says
    # nothing about W; use the large-x magnitude |x^kappa e^(-x/2)| instead.
    envelope = abs(cmath.exp(order.kappa * math.log(x) - 0.5 * x))
    size = abs(w) if abs(w) > w_err else min(w_err, envelope)
    ratio = scale / max(size, 1e-300)
    if derivative:
        dsize = abs(dw) if abs(dw) > dw_err else min(dw_err, envelope)
        ratio = max(ratio, dscale / max(dsize, 1e-300))
    digits = 20 + int(math.ceil(math.log10(max(ratio, 1.0))))
    w, dw = _series_extended(order, x, derivative, digits)
    return w, 4 * UNIT_ROUNDOFF * abs(w), dw, 4 * UNIT_ROUNDOFF * abs(dw)


def _acceptable(res, derivative, rtol, atol):
    w, w_err, dw, dw_err = res
    ok = w_err <= max(rtol * abs(w), atol)
    if derivative:
        ok = ok and dw_err <= max(rtol * abs(dw), atol)
    return ok


def _relative(w, w_err, dw, dw_err, derivative):
    rel = w_err / abs(w) if w != 0 else math.inf
    if derivative:
        rel = max(rel, dw_err / abs(dw) if dw != 0 else math.inf)
    return rel


def _asymptotic_eval(order, x, derivative):
    k, mu = order.kappa, order.mu
    a1 = 0.5 - k + 1j * mu
    a2 = 0.5 - k - 1j * mu
    terms, omitted = _asymptotic_terms(a1, a2, x)
    s = sum(terms)
    rounding = 2 * UNIT_ROUNDOFF * max(abs(t) for t in terms)
    pref = cmath.exp(k * math.log(x) - 0.5 * x)
    w = pref * s
    w_err = abs(pref) * (omitted + rounding)
    if not derivative:
        return w, w_err, 0j, 0.0
    ds = sum(-n / x * t for n, t in enumerate(terms))
    lead = k / x - 0.5
    dw = pref * (lead * s + ds)
    n_used = len(terms)
    dw_err = abs(pref) * ((abs(lead) + n_used / x) * (omitted + rounding))
    return w, w_err, dw, dw_err


def _switch_floor(order: WhittakerOrder) -> float:
    return 2.0 * (abs(order.kappa) + abs(order.mu) + 5.0)


@lru_cache(maxsize=4096)
def _switch_point(order: WhittakerOrder) -> float:
    k, mu = order.kappa, abs(order.mu)
    a1 = 0.5 - k + 1j * mu
    a2 = 0.5 - k - 1j * mu

    def good(step: int) -> bool:
        try:
            terms, omitted = _asymptotic_terms(a1, a2, floor + step * SWITCH_STEP)
        except DivergenceError:
            return False
        return omitted <= ASYMPTOTIC_TARGET * abs(sum(terms))

    # smallest grid step that is good: gallop, then bisect
    floor = _switch_floor(order)
    if good(0):
        return floor
    lo, hi = 0, 1
    while not good(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if good(mid):
            hi = mid
        else:
            lo = mid
    return floor + hi * SWITCH_STEP


def x_switch(order: WhittakerOrder) -> float:
    """Regime boundary: asymptotic form for ``x >= x_switch(order)``."""
    return _switch_point(order)


def _evaluate(order, x, derivative, regime, switch, rtol, atol):
    if not x > 0.0:
        raise DomainError(f"W is only evaluated for x > 0, got {x!r}")
    x = float(x)
    if regime is Regime.SERIES_CONNECTION:
        w, w_err, dw, dw_err = _series_eval(order, x, derivative, rtol, atol)
    elif regime is Regime.ASYMPTOTIC:
        w, w_err, dw, dw_err = _asymptotic_eval(order, x, derivative)
    else:
        if switch is not None:
            asymptotic_first = x >= switch
        else:
            # below the search floor the answer is known without searching
            asymptotic_first = x >= _switch_floor(order) and x >= x_switch(order)
        regime, (w, w_err, dw, dw_err) = _dispatch(order, x, derivative, asymptotic_first, rtol, atol)
    if order.is_real:
        w_err += abs(w.imag)
        w = w.real
        dw_err += abs(dw.imag)
        dw = dw.real
    return EvalOutcome(w, w_err, regime), EvalOutcome(dw, dw_err, regime)


def _dispatch(order, x, derivative, asymptotic_first, rtol, atol):
    """Cheapest representation meeting the tolerances; extended series as last resort."""
    candidates = []
    attempts = [Regime.ASYMPTOTIC, Regime.SERIES_CONNECTION]
    if not asymptotic_first:
        attempts.reverse()
    for reg in attempts:
        try:
            if reg is Regime.ASYMPTOTIC:
                res = _asymptotic_eval(order, x, derivative)
            elif asymptotic_first:
                res = _series_eval(order, x, derivative, rtol, atol)
            else:
                res = _series_eval(order, x, derivative, math.inf)
        except DivergenceError:
            continue
        if _acceptable(res, derivative, rtol, atol):
            return reg, res
        candidates.append((_relative(*res, derivative), reg, res))
    if not asymptotic_first:
        res = _series_eval(order, x, derivative, rtol, atol)
        if _acceptable(res, derivative, rtol, atol):
            return Regime.SERIES_CONNECTION, res
        candidates.append((_relative(*res, derivative), Regime.SERIES_CONNECTION, res))
    rel, reg, res = min(candidates, key=lambda c: c[0])
    if rel > ACCURACY_LIMIT:
        raise AccuracyUnachievable(
            f"W_{{{order.kappa}, i{order.mu}}}({x}): best relative error estimate {rel:.2g}"
        )
    return reg, res


def whittaker_w(
    order: WhittakerOrder,
    x: float,
    *,
    regime: Regime | None = None,
    switch: float | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = 0.0,
) -> EvalOutcome:
    """Second-kind function ``W_{kappa, i mu}(x)`` for ``x > 0``.

    ``regime`` forces one representation; ``switch`` overrides
    :func:`x_switch`; ``rtol`` and ``atol`` (accept if the error estimate is
    below ``max(rtol |W|, atol)``) decide whether the extended-precision
    series is worth its cost.  For
    real kappa the value is returned as a float and the discarded imaginary
    part is added to the error estimate.
    """
    return _evaluate(order, x, False, regime, switch, rtol, atol)[0]


def whittaker_w_derivative(
    order: WhittakerOrder,
    x: float,
    *,
    regime: Regime | None = None,
    switch: float | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = 0.0,
) -> EvalOutcome:
    """dW/dx by term-wise differentiation of the active representation."""
    return _evaluate(order, x, True, regime, switch, rtol, atol)[1]


def whittaker_w_pair(
    order: WhittakerOrder,
    x: float,
    *,
    regime: Regime | None = None,
    switch: float | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = 0.0,
) -> tuple[EvalOutcome, EvalOutcome]:
    """``(W, dW/dx)`` from one pass over the series."""
    return _evaluate(order, x, True, regime, switch, rtol, atol)


def macdonald_k_imag(mu: float, y: float, tol: float = 1e-16) -> float:
    """K_{i mu}(y) from ``int_0^inf cos(mu t) exp(-y cosh t) dt``.

    Independent of the Whittaker machinery; used to check the kappa = 0
    reduction ``W_{0, i mu}(x) = sqrt(x / pi) K_{i mu}(x / 2)``.

    The integrand is entire and even in ``t`` with doubly exponential decay,
    so the trapezoidal rule on a uniform step converges geometrically.
    Shifting the line of integration by ``0 < d <= 1.4`` bounds the
    discretization error by ``exp(-a d + y d**2 / 2)`` relative to
    ``exp(-y)``, with ``a = 2 pi / h - |mu|``; the step makes that exponent
    at most -40 for some admissible ``d``.  The sum is cut where
    ``exp(-y cosh t)`` drops below ``tol * exp(-y)``.
    """
    if not y > 0.0:
        raise DomainError(f"macdonald_k_imag needs y > 0, got {y!r}")
    a = max(math.sqrt(80.0 * y), (40.0 + 0.98 * y) / 1.4)
    h = min(0.1, 2.0 * math.pi / (abs(mu) + a))
    t_max = max(math.acosh(1.0 + math.log(1.0 / tol) / y), 1.0)
    t = np.arange(0.0, t_max + h, h)
    # exp(-y (cosh t - 1)) scaled by exp(-y) afterwards avoids underflow at large y
    w = np.exp(-y * (np.cosh(t) - 1.0)) * np.cos(mu * t)
    return math.exp(-y) * h * (math.fsum(w) - 0.5 * w[0])
