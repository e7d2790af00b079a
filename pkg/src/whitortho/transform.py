"""Wimp's index transform built on W_{kappa, i mu}.

Synthesis maps a spectral function to a radial one,

    g(x) = int dmu' mu' sinh(2 pi mu') W_{kappa, i mu'}(x) f(mu'),

and analysis inverts it,

    f(mu) = Gamma(1/2-kappa+i mu) Gamma(1/2-kappa-i mu) / pi^2
            * int_0^inf dx x^-2 W_{kappa, i mu}(x) g(x).

The analysis integral starts at ``XI_FLOOR`` instead of 0; the part below the
floor is estimated from the small-x form of W and added to the error.  For
kappa = 0 the same pair is also available with Macdonald kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NonConvergence, OverflowRisk
from .quadrature import QuadratureResult, integrate_finite, integrate_semiinfinite
from .specfun import MU_MIN, abs_gamma_half_plus_imu, gamma_pair_product
from .whittaker import (
    WhittakerOrder,
    amplitude_scale,
    macdonald_k_imag,
    small_x_coefficients,
    whittaker_w,
)

XI_FLOOR = 1e-6
# beyond this x the analysis integrand is below exp(-60) and goes to the tail rule
ANALYSIS_SPLIT = 60.0
MU_MAX = 10.0
GRID_LO = 1e-6
GRID_HI = 50.0
POINTS_PER_DECADE = 64
# accuracy requested from W inside nested integrals, relative to amplitude_scale
KERNEL_RTOL = 1e-10
# at most this many spectral grid nodes become panel edges in synthesis
MAX_BREAKPOINTS = 200


def _hermite_slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = len(x)
    d = np.zeros(n)
    if n == 1:
        return d
    h = np.diff(x)
    delta = np.diff(y) / h
    if n == 2:
        d[:] = delta[0]
        return d
    # three-point derivative on a nonuniform grid
    d[1:-1] = (h[1:] * delta[:-1] + h[:-1] * delta[1:]) / (h[:-1] + h[1:])
    d[0] = delta[0] - h[0] * (delta[1] - delta[0]) / (h[0] + h[1])
    d[-1] = delta[-1] + h[-1] * (delta[-1] - delta[-2]) / (h[-1] + h[-2])
    return d


def _hermite_eval(x, y, d, t):
    t = np.asarray(t, dtype=float)
    i = np.clip(np.searchsorted(x, t, side="right") - 1, 0, len(x) - 2)
    h = x[i + 1] - x[i]
    s = (t - x[i]) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1]


@dataclass(frozen=True)
class SpectralFunction:
    """Samples of f(mu) on an increasing grid; zero outside the grid.

    Between nodes f is the local cubic Hermite interpolant with three-point
    slopes (``interpolation="cubic_local"``), continuous with its first
    derivative.
    """

    mu_grid: np.ndarray
    values: np.ndarray
    interpolation: str = "cubic_local"
    _slopes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mu = np.asarray(self.mu_grid, dtype=float)
        val = np.asarray(self.values, dtype=float)
        if mu.ndim != 1 or mu.shape != val.shape or len(mu) < 2:
            raise ValueError("mu_grid and values must be 1-d, same length, >= 2 points")
        if np.any(np.diff(mu) <= 0):
            raise ValueError("mu_grid must be strictly increasing")
        if not np.all(np.isfinite(val)) or not np.all(np.isfinite(mu)):
            raise ValueError("spectral samples must be finite")
        if np.any(np.abs(mu) < MU_MIN) or mu[0] < 0.0 < mu[-1]:
            raise DomainError("spectral grid must stay on one side of zero with |mu| >= MU_MIN")
        if self.interpolation != "cubic_local":
            raise ValueError(f"unknown interpolation {self.interpolation!r}")
        object.__setattr__(self, "mu_grid", mu)
        object.__setattr__(self, "values", val)
        object.__setattr__(self, "_slopes", _hermite_slopes(mu, val))

    @classmethod
    def from_callable(cls, f: Callable[[float], float], lo: float, hi: float, n: int = 81):
        grid = np.linspace(lo, hi, n)
        return cls(grid, np.array([f(m) for m in grid]))

    @property
    def support(self) -> tuple[float, float]:
        return float(self.mu_grid[0]), float(self.mu_grid[-1])

    def __call__(self, mu):
        mu_arr = np.asarray(mu, dtype=float)
        lo, hi = self.support
        out = _hermite_eval(self.mu_grid, self.values, self._slopes, mu_arr)
        out = np.where((mu_arr >= lo) & (mu_arr <= hi), out, 0.0)
        return float(out) if out.ndim == 0 else out

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        if not np.array_equal(self.mu_grid, other.mu_grid):
            raise ValueError("can only add spectral functions on the same grid")
        return SpectralFunction(self.mu_grid, self.values + other.values)

    def scaled(self, c: float) -> "SpectralFunction":
        return SpectralFunction(self.mu_grid, c * self.values)


@dataclass(frozen=True)
class RadialFunction:
    """Tabulated g(x) on an increasing positive grid.

    Evaluation interpolates ``g(x) / sqrt(x)`` against ``ln x`` with the same
    local cubic rule as :class:`SpectralFunction`; that ratio is smooth in
    ``ln x`` for the functions produced by :func:`synthesize`.  Outside the
    grid the function is taken as zero.
    """

    x_grid: np.ndarray
    values: np.ndarray
    _u: np.ndarray = field(init=False, repr=False, compare=False)
    _h: np.ndarray = field(init=False, repr=False, compare=False)
    _slopes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = np.asarray(self.x_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or x.shape != v.shape or len(x) < 2:
            raise ValueError("x_grid and values must be 1-d, same length, >= 2 points")
        if np.any(x <= 0) or np.any(np.diff(x) <= 0):
            raise ValueError("x_grid must be positive and strictly increasing")
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "values", v)
        u = np.log(x)
        h = v / np.sqrt(x)
        object.__setattr__(self, "_u", u)
        object.__setattr__(self, "_h", h)
        object.__setattr__(self, "_slopes", _hermite_slopes(u, h))

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        inside = (x_arr >= self.x_grid[0]) & (x_arr <= self.x_grid[-1])
        safe = np.where(inside, x_arr, self.x_grid[0])
        out = np.sqrt(safe) * _hermite_eval(self._u, self._h, self._slopes, np.log(safe))
        out = np.where(inside, out, 0.0)
        return float(out) if out.ndim == 0 else out


def log_grid(lo: float = GRID_LO, hi: float = GRID_HI, per_decade: int = POINTS_PER_DECADE) -> np.ndarray:
    n = int(math.ceil(per_decade * math.log10(hi / lo))) + 1
    return np.geomspace(lo, hi, n)


def _check_support(f: SpectralFunction, allow_wide: bool) -> None:
    lo, hi = f.support
    if lo < MU_MIN:
        raise DomainError("synthesis needs a spectral function supported in mu >= MU_MIN")
    if hi > MU_MAX and not allow_wide:
        raise OverflowRisk(f"spectral support reaches {hi} > {MU_MAX}; pass allow_wide=True")


def _breakpoints(f: SpectralFunction) -> np.ndarray:
    # The interpolant is only piecewise smooth; with panel edges on the nodes
    # every panel sees a cubic times a smooth kernel.
    step = max(1, int(math.ceil(len(f.mu_grid) / MAX_BREAKPOINTS)))
    return f.mu_grid[::step]


def _kernel(order: WhittakerOrder, x: float) -> float:
    atol = KERNEL_RTOL * amplitude_scale(order, x)
    return whittaker_w(order, x, rtol=KERNEL_RTOL, atol=atol).value


def _synthesis_quadrature(f, kappa, x, tol, atol) -> QuadratureResult:
    def integrand(mu: float) -> float:
        fm = f(mu)
        if fm == 0.0:
            return 0.0
        w = _kernel(WhittakerOrder(kappa, mu), x)
        return mu * math.sinh(2.0 * math.pi * mu) * w * fm

    lo, hi = f.support
    res = integrate_finite(integrand, lo, hi, atol, l1_tol=tol, breakpoints=_breakpoints(f))
    if not res.converged:
        raise NonConvergence(f"synthesis at x={x} did not converge", res)
    return res


def synthesize(
    f: SpectralFunction,
    kappa: float,
    x: float,
    tol: float = 1e-9,
    *,
    atol: float = 0.0,
    allow_wide: bool = False,
) -> float:
    """g(x) = int dmu' mu' sinh(2 pi mu') W_{kappa, i mu'}(x) f(mu') over supp f.

    ``tol`` is relative to the L1 norm of the integrand.  Far out in x that
    norm is exponentially small and W cannot be had to matching relative
    accuracy cheaply; an absolute ``atol`` then ends the refinement.
    """
    _check_support(f, allow_wide)
    if not x > 0.0:
        raise DomainError("synthesize needs x > 0")
    if f.is_zero():
        return 0.0
    return _synthesis_quadrature(f, float(kappa), float(x), tol, atol).value


def _synthesis_floor(f: SpectralFunction, kappa: float, tol: float):
    """x -> absolute synthesis tolerance for nested use.

    ``tol`` times the integrand's L1 norm at x = 1, scaled down like sqrt(x)
    below 1 where g itself vanishes like sqrt(x).
    """
    scale = _synthesis_quadrature(f, kappa, 1.0, tol, 0.0).l1_norm
    return lambda x: tol * scale * min(1.0, math.sqrt(x))


def synthesize_grid(
    f: SpectralFunction,
    kappa: float,
    x_grid: Sequence[float] | None = None,
    tol: float = 1e-9,
) -> RadialFunction:
    """Tabulate :func:`synthesize` on a (default log-spaced) x-grid."""
    grid = log_grid() if x_grid is None else np.asarray(x_grid, dtype=float)
    if f.is_zero():
        return RadialFunction(grid, np.zeros_like(grid))
    _check_support(f, False)
    floor = _synthesis_floor(f, float(kappa), tol)
    return RadialFunction(grid, np.array([synthesize(f, kappa, x, tol, atol=floor(x)) for x in grid]))


@dataclass(frozen=True)
class AnalysisResult:
    value: float
    abs_error: float
    head_remainder: float
    quadrature: QuadratureResult


HEAD_SPAN = 12.0  # units of ln x covered below the floor
HEAD_STEP = 0.125


def _head_remainder(order: WhittakerOrder, g: Callable[[float], float], xi: float) -> float:
    """Estimate of |int_0^xi x^-2 W g dx| from the small-x form of W.

    Below ``xi`` W is replaced by ``sqrt(x) [A cos(mu ln x) - B sin(mu ln x)]``
    and the integral is done by Simpson's rule in ``u = ln x`` over
    ``HEAD_SPAN`` units.  The estimate is the magnitude of that integral plus
    the change when the span is halved, which stands in for the part still
    further down.
    """
    if not order.is_real:
        raise DomainError("the head model is only used for real kappa")
    c = small_x_coefficients(order)
    mu = order.mu
    n = int(round(HEAD_SPAN / HEAD_STEP))
    u0 = math.log(xi)
    vals = []
    for k in range(n + 1):
        u = u0 - k * HEAD_STEP
        x = math.exp(u)
        model = c.A * math.cos(mu * u) - c.B * math.sin(mu * u)
        vals.append(model * g(x) / math.sqrt(x))

    def simpson(m: int) -> float:
        w = [1.0] + [4.0 if k % 2 else 2.0 for k in range(1, m)] + [1.0]
        return HEAD_STEP / 3.0 * math.fsum(wk * v for wk, v in zip(w, vals[: m + 1]))

    full = simpson(n)
    half = simpson(n // 2)
    return abs(full) + abs(full - half)


def analyze(
    g: Callable[[float], float],
    kappa: float,
    mu: float,
    tol: float = 1e-8,
    *,
    xi_floor: float = XI_FLOOR,
) -> AnalysisResult:
    """Recover f(mu) from a radial function ``g`` (any callable of x > 0).

    ``tol`` is relative to the L1 norm of the x-integrand.
    """
    order = WhittakerOrder(float(kappa), mu)
    prefactor = gamma_pair_product(float(kappa), mu).real / math.pi**2

    def integrand(x: float) -> float:
        gx = g(x)
        if gx == 0.0:
            return 0.0
        return _kernel(order, x) * gx / (x * x)

    res = integrate_semiinfinite(integrand, xi_floor, 0.0, 1.0, l1_tol=tol, split=ANALYSIS_SPLIT)
    if not res.converged:
        raise NonConvergence(f"analysis at mu={mu} did not converge", res)
    head = _head_remainder(order, g, xi_floor)
    return AnalysisResult(
        prefactor * res.value,
        prefactor * (res.abs_error + head),
        prefactor * head,
        res,
    )


class _Memo:
    """Caches g(x) so several analyses of one synthesis share evaluations."""

    def __init__(self, func: Callable[[float], float]):
        self.func = func
        self.cache: dict[float, float] = {}

    def __call__(self, x: float) -> float:
        try:
            return self.cache[x]
        except KeyError:
            val = self.cache[x] = self.func(x)
            return val


def round_trip(
    f: SpectralFunction,
    kappa: float,
    mus: Sequence[float],
    tol: float = 1e-8,
) -> list[AnalysisResult]:
    """analyze(synthesize(f)) at each ``mu``; inner tolerance is ``tol / 10``.

    All analyses share one memoized synthesis, so nodes common to the
    x-integrals are synthesized once.

    The cut at ``XI_FLOOR`` resolves spectral structure only down to a scale
    of about 2 pi / ln(1/XI_FLOOR) in mu.  For samples with spacing h that is
    coarser than the grid, so the value returned at a node is the smooth
    function plus an O(h^4) local mean of the interpolation error, and
    ``abs_error`` (quadrature plus head) does not include that term.
    """
    if f.is_zero():
        return [analyze(lambda x: 0.0, kappa, mu, tol) for mu in mus]
    _check_support(f, False)
    inner = tol / 10
    floor = _synthesis_floor(f, float(kappa), inner)
    g = _Memo(lambda x: synthesize(f, kappa, x, inner, atol=floor(x)))
    return [analyze(g, kappa, mu, tol) for mu in mus]


def _macdonald_synthesis(f: SpectralFunction, x: float, tol: float, atol: float = 0.0) -> QuadratureResult:
    y = 0.5 * x
    root = math.sqrt(x / math.pi)

    def integrand(mu: float) -> float:
        fm = f(mu)
        if fm == 0.0:
            return 0.0
        return mu * math.sinh(2.0 * math.pi * mu) * root * macdonald_k_imag(mu, y) * fm

    lo, hi = f.support
    res = integrate_finite(integrand, lo, hi, atol, l1_tol=tol, breakpoints=_breakpoints(f))
    if not res.converged:
        raise NonConvergence(f"Macdonald synthesis at x={x} did not converge", res)
    return res


def kl_transform_pair(
    f: SpectralFunction,
    mu: float,
    tol: float = 1e-8,
    *,
    xi_floor: float = XI_FLOOR,
) -> float:
    """kappa = 0 round trip with kernels sqrt(x/pi) K_{i mu}(x/2).

    The kernel comes from the cosh-integral representation of K, not from
    the Whittaker series, so this is an independent route to the same number
    :func:`round_trip` produces at kappa = 0.  The prefactor is
    |Gamma(1/2 + i mu)|^2 / pi^2 = 1 / (pi cosh(pi mu)).
    """
    _check_support(f, False)
    if f.is_zero():
        return 0.0
    prefactor = abs_gamma_half_plus_imu(mu) ** 2 / math.pi**2
    inner = tol / 10
    scale = _macdonald_synthesis(f, 1.0, inner).l1_norm
    g = _Memo(lambda x: _macdonald_synthesis(f, x, inner, inner * scale * min(1.0, math.sqrt(x))).value)
    root_pi = math.sqrt(math.pi)

    def integrand(x: float) -> float:
        gx = g(x)
        if gx == 0.0:
            return 0.0
        kernel = math.sqrt(x) / root_pi * macdonald_k_imag(mu, 0.5 * x)
        return kernel * gx / (x * x)

    res = integrate_semiinfinite(integrand, xi_floor, 0.0, 1.0, l1_tol=tol, split=ANALYSIS_SPLIT)
    if not res.converged:
        raise NonConvergence(f"Macdonald analysis at mu={mu} did not converge", res)
    return prefactor * res.value
