"""Special functions with explicit error bounds and method tags.

Every value is returned as a :class:`SpecialValue` carrying the float
result, a conservative absolute error bound, and the evaluation method:

* ``SERIES`` -- direct evaluation (power series, or a library call in a
  regular region);
* ``TRANSFORMED_SERIES`` -- a series after an argument transformation
  (the z -> 1-z linear transformation of the Gauss hypergeometric
  function, including its z = 1 closed-form limit);
* ``REFLECTION`` -- the reflection identity for the gamma function on the
  negative axis.

The hypergeometric implementation targets parameters and arguments
z in [0, 1] only; no analytic continuation beyond that interval is
attempted (out-of-range arguments raise ``DomainError``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError

__all__ = ["SpecialValue", "gamma_fn", "hyp2f1"]

SERIES = "SERIES"
TRANSFORMED_SERIES = "TRANSFORMED_SERIES"
REFLECTION = "REFLECTION"

_MAX_TERMS = 100_000
_TERM_RTOL = 1e-14


@dataclass(frozen=True)
class SpecialValue:
    """A computed value with an absolute error bound and a method tag."""

    value: float
    error: float
    method: str

    def __float__(self) -> float:
        return self.value


def _near_nonpositive_integer(x: float, tol: float = 1e-12) -> bool:
    return x <= 0.5 and abs(x - round(x)) < tol


def gamma_fn(x: float) -> SpecialValue:
    """Gamma function on the real line, poles excluded.

    Raises ``DomainError`` at nonpositive integers.  The error bound is a
    few ulps of the result; on the negative axis the reflection identity
    classifies the method and slightly widens the bound.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma_fn: argument must be finite")
    if x <= 0.0 and x == round(x):
        raise DomainError(f"gamma_fn: pole at nonpositive integer {x}")
    try:
        value = math.gamma(x)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"gamma_fn: not evaluable at {x}: {exc}") from exc
    if not math.isfinite(value):
        raise NumericError(f"gamma_fn: overflow at {x}")
    if x > 0.0:
        return SpecialValue(value=value, error=abs(value) * 1e-15, method=SERIES)
    # negative non-integer argument: reflection through sin(pi*x)
    return SpecialValue(value=value, error=abs(value) * 1e-14, method=REFLECTION)


def _series_2f1(a: float, b: float, c: float, z: float) -> tuple:
    """Direct power series sum_{m} (a)_m (b)_m / ((c)_m m!) z^m.

    Returns (value, error_bound).  Converges for |z| < 1 and terminates
    exactly when a or b is a nonpositive integer.
    """
    term = 1.0
    total = 1.0
    small_streak = 0
    for m in range(_MAX_TERMS):
        term *= (a + m) * (b + m) / ((c + m) * (1.0 + m)) * z
        total += term
        if abs(term) <= _TERM_RTOL * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return total, abs(total) * 1e-14 + 2.0 * abs(term)
        else:
            small_streak = 0
        if not math.isfinite(total):
            raise NumericError("hyp2f1: series overflowed")
    raise NumericError("hyp2f1: series did not converge")


def hyp2f1(a: float, b: float, c: float, z: float) -> SpecialValue:
    """Gauss hypergeometric function 2F1(a, b; c; z) for z in [0, 1].

    Evaluation strategy:

    * terminating cases (a or b a nonpositive integer): the sum is a
      polynomial, evaluated by the direct series at any finite argument
      (``SERIES``);
    * z < 1/2: direct series (``SERIES``);
    * z in [1/2, 1): linear transformation toward argument 1 - z
      (``TRANSFORMED_SERIES``); if the transformation is degenerate
      (c - a - b within 1e-8 of an integer) the direct series is used
      instead, which still converges for z < 1;
    * z = 1: closed-form limit, requiring c - a - b > 0.

    Raises
    ------
    DomainError
        If c is a nonpositive integer, z is outside [0, 1] in a
        non-terminating case, or z = 1 with c - a - b <= 0 (the function
        diverges there).
    NumericError
        If no applicable series converges.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if _near_nonpositive_integer(c):
        raise DomainError("hyp2f1: c must not be a nonpositive integer")

    terminating = _near_nonpositive_integer(a) or _near_nonpositive_integer(b)
    if terminating and math.isfinite(z):
        # polynomial case: the series terminates for any argument
        value, err = _series_2f1(a, b, c, z)
        return SpecialValue(value, err, SERIES)
    if not (0.0 <= z <= 1.0):
        raise DomainError("hyp2f1: argument z must lie in [0, 1]")

    if z == 0.0:
        return SpecialValue(1.0, 1e-16, SERIES)
    if z < 0.5:
        value, err = _series_2f1(a, b, c, z)
        return SpecialValue(value, err, SERIES)

    s = c - a - b
    if z == 1.0:
        if s <= 1e-12:
            raise DomainError("hyp2f1: divergent at z = 1 for c - a - b <= 0")
        num = gamma_fn(c).value * gamma_fn(s).value
        den = gamma_fn(c - a).value * gamma_fn(c - b).value
        value = num / den
        return SpecialValue(value, abs(value) * 1e-13, TRANSFORMED_SERIES)

    if abs(s - round(s)) < 1e-8:
        # degenerate transformation (logarithmic case): the direct series
        # still converges on [1/2, 1), just more slowly
        value, err = _series_2f1(a, b, c, z)
        return SpecialValue(value, max(err, abs(value) * 1e-12), SERIES)

    w = 1.0 - z
    try:
        g_c = gamma_fn(c).value
        coef1 = g_c * gamma_fn(s).value / (gamma_fn(c - a).value * gamma_fn(c - b).value)
        coef2 = g_c * gamma_fn(-s).value / (gamma_fn(a).value * gamma_fn(b).value)
    except DomainError:
        # a pole in a prefactor: fall back to the direct series
        value, err = _series_2f1(a, b, c, z)
        return SpecialValue(value, max(err, abs(value) * 1e-12), SERIES)
    s1, e1 = _series_2f1(a, b, 1.0 - s, w)
    s2, e2 = _series_2f1(c - a, c - b, 1.0 + s, w)
    value = coef1 * s1 + w**s * coef2 * s2
    err = abs(coef1) * e1 + abs(w**s * coef2) * e2 + abs(value) * 1e-14
    return SpecialValue(value, err, TRANSFORMED_SERIES)
