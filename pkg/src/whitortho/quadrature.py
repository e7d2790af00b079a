"""Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.

The panel rule is the 7/15-point Gauss-Kronrod pair with the QUADPACK
``dqk15`` error heuristic.  Panels are refined globally: the panel with the
largest error estimate is bisected until the summed estimate meets the
tolerance or the evaluation budget runs out.

On ``[a, inf)`` the head ``[a, T]`` is always integrated in ``u = ln x``.
Integrands such as ``x**-2 W(x) W'(x)`` oscillate like ``cos(mu ln x)`` near
the origin; in ``u`` that is a plain sinusoid.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "WHITTAKER_PANEL_BUDGET"

_EPMACH = 2.0**-52
_UFLOW = 2.2250738585072014e-308

# dqk15 abscissae, largest first; odd indices are the 7-point Gauss nodes.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

MIN_EVALS = 15

Integrand = Callable[[float], float]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float
    n_evals: int
    converged: bool
    l1_norm: float = math.nan  # estimate of the integral of |f|


def panel_budget() -> int:
    """Evaluation budget, overridable through ``WHITTAKER_PANEL_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    budget = int(raw)
    if budget < MIN_EVALS:
        raise ValueError(f"{BUDGET_ENV}={raw} is below the single-panel minimum {MIN_EVALS}")
    return budget


def _gk15(f: Integrand, a: float, b: float) -> tuple[float, float, float]:
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = f(centr)
    resg = fc * _WG[3]
    resk = fc * _WGK[7]
    resabs = abs(resk)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        dx = hlgth * _XGK[j]
        f1 = f(centr - dx)
        f2 = f(centr + dx)
        fv1[j] = f1
        fv2[j] = f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = resk * 0.5
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += _WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    err = abs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        err = max(_EPMACH * 50.0 * resabs, err)
    return result, err, resabs


def integrate_finite(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-10,
    *,
    rel_tol: float = 0.0,
    l1_tol: float = 0.0,
    initial_panels: int = 1,
    breakpoints: Sequence[float] | None = None,
    budget: int | None = None,
) -> QuadratureResult:
    """Globally adaptive G7-K15 quadrature of ``f`` over ``[a, b]``.

    Converged means ``abs_error <= max(tol, rel_tol * |I|, l1_tol * ∫|f|)``.
    The last criterion stays meaningful when ``I`` is near zero through
    cancellation.  ``breakpoints`` inside ``(a, b)`` become the initial
    panel edges instead of ``initial_panels`` equal pieces; put them where
    ``f`` is not smooth.  When the budget runs out the best estimate comes
    back with ``converged=False``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not (tol > 0.0 or rel_tol > 0.0 or l1_tol > 0.0):
        raise ValueError("need a positive tolerance")
    if budget is None:
        budget = panel_budget()

    if breakpoints is not None:
        edges = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    else:
        edges = [a + (b - a) * k / initial_panels for k in range(initial_panels + 1)]
        edges[-1] = b
    heap: list[tuple[float, float, float]] = []
    values: dict[tuple[float, float], float] = {}
    errors: dict[tuple[float, float], float] = {}
    absvals: dict[tuple[float, float], float] = {}
    n_evals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err, resabs = _gk15(f, lo, hi)
        n_evals += 15
        values[(lo, hi)] = val
        errors[(lo, hi)] = err
        absvals[(lo, hi)] = resabs
        heapq.heappush(heap, (-err, lo, hi))

    def target() -> float:
        return max(tol, rel_tol * abs(total), l1_tol * math.fsum(absvals.values()))

    total, total_err = math.fsum(values.values()), math.fsum(errors.values())
    while total_err > target():
        if n_evals + 30 > budget:
            return QuadratureResult(total, total_err, n_evals, False, math.fsum(absvals.values()))
        _, lo, hi = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # panel below floating-point resolution
            return QuadratureResult(total, total_err, n_evals, False, math.fsum(absvals.values()))
        del values[(lo, hi)], errors[(lo, hi)], absvals[(lo, hi)]
        for sub in ((lo, mid), (mid, hi)):
            val, err, resabs = _gk15(f, *sub)
            values[sub] = val
            errors[sub] = err
            absvals[sub] = resabs
            heapq.heappush(heap, (-err, sub[0], sub[1]))
        n_evals += 30
        total, total_err = math.fsum(values.values()), math.fsum(errors.values())
    return QuadratureResult(total, total_err, n_evals, True, math.fsum(absvals.values()))


def _tail_start(f: Integrand, a: float, tol: float, decay: float) -> float:
    x0 = max(a, 1.0 / decay)
    scale = 0.0
    for k in range(4):
        x = x0 * 2.0**k
        scale = max(scale, abs(f(x)) * math.exp(min(decay * x, 700.0)))
    if scale == 0.0 or not math.isfinite(scale):
        return max(a, x0)
    if not tol > 0.0:
        tol = 1e-16 * scale
    t = math.log(10.0 * scale / tol) / decay
    return min(max(a, t), a + 700.0 / decay)


def integrate_semiinfinite(
    f: Integrand,
    a: float,
    tol: float = 1e-10,
    decay_hint: float = 1.0,
    *,
    rel_tol: float = 0.0,
    l1_tol: float = 0.0,
    head_panels: int | None = None,
    split: float | None = None,
    budget: int | None = None,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, inf)`` for ``a > 0``.

    The split point ``T`` is where ``scale * exp(-decay_hint * T)`` falls
    to ``tol / 10``, ``scale`` being sampled from ``f`` itself.  The head is
    integrated in ``u = ln x``; the tail through ``x = T + s / decay_hint``
    with ``s = t / (1 - t)``, which also copes with algebraic decay.
    A fixed ``split`` skips the sampling, so repeated integrals share nodes.
    The relative criteria of the tail are measured against the head, so a
    negligible tail is not refined for its own sake.
    """
    if not a > 0.0:
        raise ValueError("integrate_semiinfinite needs a > 0")
    if not decay_hint > 0.0:
        raise ValueError("decay_hint must be positive")
    if budget is None:
        budget = panel_budget()
    t_split = _tail_start(f, a, tol, decay_hint) if split is None else max(a, split)

    def head(u: float) -> float:
        x = math.exp(u)
        return f(x) * x

    def tail(t: float) -> float:
        if t >= 1.0:
            return 0.0
        s = t / (1.0 - t)
        return f(t_split + s / decay_hint) / (decay_hint * (1.0 - t) ** 2)

    parts = []
    used = 0
    tail_tol = 0.5 * tol
    tail_rel = rel_tol
    tail_l1 = l1_tol
    if t_split > a:
        lo, hi = math.log(a), math.log(t_split)
        if head_panels is None:
            head_panels = max(1, math.ceil(hi - lo))
        parts.append(
            integrate_finite(head, lo, hi, 0.5 * tol, rel_tol=rel_tol, l1_tol=l1_tol,
                             initial_panels=head_panels, budget=budget)
        )
        used = parts[-1].n_evals
        h = parts[-1]
        tail_tol = max(tail_tol, rel_tol * abs(h.value), l1_tol * h.l1_norm)
        tail_rel = tail_l1 = 0.0
        if not tail_tol > 0.0:
            # head vanished identically; fall back to the tail's own scale
            tail_rel, tail_l1 = rel_tol, l1_tol
    parts.append(
        integrate_finite(tail, 0.0, 1.0, tail_tol, rel_tol=tail_rel, l1_tol=tail_l1,
                         budget=max(budget - used, MIN_EVALS))
    )
    value = math.fsum(p.value for p in parts)
    err = math.fsum(p.abs_error for p in parts)
    n = sum(p.n_evals for p in parts)
    ok = all(p.converged for p in parts)
    l1 = math.fsum(p.l1_norm for p in parts)
    return QuadratureResult(value, err, n, ok, l1)
