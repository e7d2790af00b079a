"""Confluent hypergeometric series: convergent 1F1 and divergent 2F0.

Both series are summed by their term ratio, so Pochhammer symbols are never
formed explicitly and nothing overflows before the sum itself does.  The
summation loops only use ``+ - * /`` and ``abs`` and therefore also run on
``mpmath.mpc`` operands; :mod:`whitortho.whittaker` relies on that for its
extended-precision fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivergenceError, LossOfPrecision, ParameterPole

UNIT_ROUNDOFF = 2.0**-53
EPS_TAIL = 1e-17
LOSS_THRESHOLD = 1e-8
MAX_TERMS = 100_000


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    abs_error_estimate: float
    terms_used: int


def _kummer_sum(a, b, x, eps_tail, unit):
    """Sum 1F1(a; b; x); return (value, peak |partial sum|, |last term|, n)."""
    term = 1.0 + 0.0 * a  # keeps the operand type (complex or mpc)
    total = term
    peak = abs(total)
    small = 0
    n = 0
    while small < 3:
        term = term * (a + n) / (b + n) * x / (n + 1)
        total = total + term
        n += 1
        mag = abs(total)
        if mag > peak:
            peak = mag
        if abs(term) <= eps_tail * mag:
            small += 1
        else:
            small = 0
        if n >= MAX_TERMS:
            raise LossOfPrecision(f"1F1 series did not settle after {MAX_TERMS} terms")
    return total, peak, abs(term), n + 1


def _check_lower(b: complex) -> None:
    n = round(b.real)
    if n <= 0 and abs(b - n) < 1e-12:
        raise ParameterPole(f"1F1 lower parameter {b!r} is a nonpositive integer")


def kummer_1f1(a: complex, b: complex, x: float) -> SeriesResult:
    """Kummer's function 1F1(a; b; x) for complex a, b and real x >= 0.

    The error estimate adds the size of the last term to the rounding error
    implied by the largest partial sum seen.

    Raises
    ------
    ParameterPole
        ``b`` within 1e-12 of a nonpositive integer.
    LossOfPrecision
        Cancellation cost more than eight digits relative to the result.
    """
    a = complex(a)
    b = complex(b)
    x = float(x)
    _check_lower(b)
    if x < 0.0:
        raise ValueError("kummer_1f1 is only defined here for x >= 0")
    if x == 0.0:
        return SeriesResult(1.0 + 0j, 0.0, 1)
    value, peak, last, n = _kummer_sum(a, b, x, EPS_TAIL, UNIT_ROUNDOFF)
    err = peak * UNIT_ROUNDOFF * math.sqrt(n) + last
    if err > LOSS_THRESHOLD * abs(value):
        raise LossOfPrecision(
            f"1F1({a}; {b}; {x}): rounding estimate {err:.3g} vs |value| {abs(value):.3g}"
        )
    return SeriesResult(value, err, n)


def kummer_transform(a: complex, b: complex, x: float) -> complex:
    """exp(x) * 1F1(b - a; b; -x); equals 1F1(a; b; x). Test helper."""
    value, _, _, _ = _kummer_sum(complex(b - a), complex(b), -float(x), EPS_TAIL, UNIT_ROUNDOFF)
    return math.exp(x) * value


def _asymptotic_terms(a1, a2, x):
    """Terms of 2F0(a1, a2;; -1/x) up to (not including) the first local minimum.

    Returns ``(terms, omitted)`` where ``omitted`` is the magnitude of the
    first term left out, i.e. the smallest one.  Summation also stops early
    once a term drops below the rounding level of the partial sum.
    """
    z = -1.0 / x
    terms = [1.0 + 0.0 * a1]
    total = terms[0]
    prev_mag = 1.0
    n = 0
    while True:
        nxt = terms[-1] * (a1 + n) * (a2 + n) / (n + 1) * z
        mag = abs(nxt)
        if n == 0 and mag > prev_mag:
            raise DivergenceError(
                f"2F0 first correction {mag:.3g} exceeds the leading term at x={x}"
            )
        if mag >= prev_mag or mag == 0.0 or mag <= EPS_TAIL * abs(total):
            return terms, mag
        terms.append(nxt)
        total = total + nxt
        prev_mag = mag
        n += 1
        if n >= MAX_TERMS:
            return terms, mag


def asymptotic_2f0(a1: complex, a2: complex, x: float) -> SeriesResult:
    """Optimally truncated 2F0(a1, a2;; -1/x) for x > 0.

    Terms are summed up to, not including, the smallest one; that term's
    magnitude (plus rounding) is the error estimate.

    Raises
    ------
    DivergenceError
        If |a1 a2 / x| > 1, i.e. x is too small for the series to help.
    """
    a1 = complex(a1)
    a2 = complex(a2)
    x = float(x)
    if not x > 0.0:
        raise ValueError("asymptotic_2f0 needs x > 0")
    terms, omitted = _asymptotic_terms(a1, a2, x)
    value = math.fsum(t.real for t in terms) + 1j * math.fsum(t.imag for t in terms)
    rounding = UNIT_ROUNDOFF * 2.0 * max(abs(t) for t in terms) if len(terms) > 1 else 0.0
    return SeriesResult(value, omitted + rounding, len(terms))
