"""Adaptive quadrature tuned for radial solution densities.

The integrands arising here are smooth inside their (open) domain but may
have integrable power/square-root singularities at the endpoints, compact
support edges, or slowly decaying tails on (0, inf).  The engine uses:

* an embedded 5-point rule pair on shared stencils (a 4-panel closed
  Newton-Cotes value checked against the 2-panel one) with recursive
  bisection;
* quadratic endpoint substitutions r = a + s^2 / r = b - s^2 on each half,
  which regularize square-root-type endpoint behavior outright;
* for a semi-infinite upper limit, decay probing followed by the inversion
  r = 1/s once super-linear decay is detected;
* shrinking-window probes near endpoints that refuse to converge; windows
  whose partial sums keep growing (beyond a hard cap, or without the
  increments contracting) mark the integral ``DIVERGENT``.

A flagged-divergent result carries no finite value (``value`` is None).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError, NumericError

__all__ = ["QuadResult", "integrate", "richardson_limit", "LimitResult"]

_MAX_DEPTH = 46
_DIVERGENCE_CAP = 1e8
_PROBE_STEPS = 42
_TINY = 1e-150


@dataclass(frozen=True)
class QuadResult:
    """Integral value with an error estimate and a convergence flag."""

    value: Optional[float]
    error: float
    flag: str  # "OK" or "DIVERGENT"


class _DepthExceeded(Exception):
    pass


def _eval(f: Callable, x: float) -> float:
    """Evaluate f, mapping domain failures and non-finite values to 0/inf.

    ``OverflowError`` maps to 0 as well: it only arises here at the extreme
    probe abscissae (|x| beyond ~1e100), where a convergent integrand's true
    contribution underflows while an intermediate power overflows; genuine
    divergence is detected from window/partial growth at moderate abscissae
    long before such points are reached.
    """
    try:
        y = f(x)
    except (DomainError, ZeroDivisionError, OverflowError, ValueError):
        return 0.0
    if math.isnan(y):
        return 0.0
    return y


def _rule_pair(h: float, f0, f1, f2, f3, f4) -> tuple:
    """(4-panel value, 2-panel value) on one stencil of width h."""
    fine = h / 90.0 * (7.0 * f0 + 32.0 * f1 + 12.0 * f2 + 32.0 * f3 + 7.0 * f4)
    coarse = h / 6.0 * (f0 + 4.0 * f2 + f4)
    return fine, coarse


def _adapt(f, a, b, f0, f1, f2, f3, f4, tol, depth) -> tuple:
    fine, coarse = _rule_pair(b - a, f0, f1, f2, f3, f4)
    err = abs(fine - coarse)
    if err <= tol or (b - a) <= 1e-15 * (abs(a) + abs(b)):
        return fine, err / 15.0
    if depth <= 0:
        raise _DepthExceeded
    m = 0.5 * (a + b)
    x_l1 = a + 0.125 * (b - a)
    x_l3 = a + 0.375 * (b - a)
    x_r1 = a + 0.625 * (b - a)
    x_r3 = a + 0.875 * (b - a)
    g_l1, g_l3 = _eval(f, x_l1), _eval(f, x_l3)
    g_r1, g_r3 = _eval(f, x_r1), _eval(f, x_r3)
    if not all(map(math.isfinite, (g_l1, g_l3, g_r1, g_r3))):
        raise _DepthExceeded
    v1, e1 = _adapt(f, a, m, f0, g_l1, f1, g_l3, f2, tol * 0.5, depth - 1)
    v2, e2 = _adapt(f, m, b, f2, g_r1, f3, g_r3, f4, tol * 0.5, depth - 1)
    return v1 + v2, e1 + e2


def _integrate_plain(f, a, b, tol) -> tuple:
    """Adaptive integral on a finite interval without substitutions."""
    if a == b:
        return 0.0, 0.0
    xs = [a + i * (b - a) / 4.0 for i in range(5)]
    fs = [_eval(f, x) for x in xs]
    if not all(map(math.isfinite, fs)):
        raise _DepthExceeded
    return _adapt(f, a, b, *fs, tol, _MAX_DEPTH)


def _sub_lo(f, a):
    """Integrand after r = a + s^2 (regularizes the lower endpoint)."""
    def g(s):
        if s == 0.0:
            s = _TINY
        return 2.0 * s * f(a + s * s)
    return g

def _sub_hi(f, b):
    """Integrand after r = b - s^2 (regularizes the upper endpoint)."""
    def g(s):
        if s == 0.0:
            s = _TINY
        return 2.0 * s * f(b - s * s)
    return g


def _probe_endpoint(f, a, b, toward_lo, tol) -> tuple:
    """Shrinking-window partial integrals toward a stubborn endpoint.

    Integrates over [a + w, b] (or [a, b - w]) for geometrically shrinking
    w and extrapolates the limit; growth beyond the cap or non-contracting
    increments means the integral is divergent.
    """
    width = b - a
    partial_prev = None
    delta_prev = None
    total_inner = 0.0
    # integrate the bulk once, then only ever-thinner slivers near the end
    cut_prev = None
    w = width * 0.25
    for _ in range(_PROBE_STEPS):
        cut = a + w if toward_lo else b - w
        if cut_prev is None:
            lo, hi = (cut, b) if toward_lo else (a, cut)
        else:
            lo, hi = (cut, cut_prev) if toward_lo else (cut_prev, cut)
        try:
            piece, _ = _integrate_plain(f, lo, hi, tol)
        except _DepthExceeded:
            return None, math.inf, "DIVERGENT"
        total_inner += piece
        cut_prev = cut
        if abs(total_inner) > _DIVERGENCE_CAP:
            return None, math.inf, "DIVERGENT"
        if partial_prev is not None:
            delta = total_inner - partial_prev
            if abs(delta) <= max(tol, 1e-14 * abs(total_inner)):
                return total_inner, max(tol, abs(delta)), "OK"
            if delta_prev is not None and abs(delta) >= 0.9 * abs(delta_prev):
                # increments not contracting: logarithmic or worse
                return None, math.inf, "DIVERGENT"
            delta_prev = delta
        partial_prev = total_inner
        w *= 0.25
    # increments kept shrinking but never met the tolerance: extrapolate
    return total_inner, abs(delta_prev if delta_prev else tol), "OK"


def _integrate_finite(f, a, b, tol) -> QuadResult:
    """Finite interval with both endpoints treated as potentially singular."""
    if b <= a:
        return QuadResult(0.0, 0.0, "OK")
    m = 0.5 * (a + b)
    total = 0.0
    err = 0.0
    for (lo, hi, transform, toward_lo) in (
        (a, m, _sub_lo(f, a), True),
        (m, b, _sub_hi(f, b), False),
    ):
        s_max = math.sqrt(hi - lo)
        try:
            v, e = _integrate_plain(transform, 0.0, s_max, tol * 0.5)
        except _DepthExceeded:
            v, e, flag = _probe_endpoint(f, lo, hi, toward_lo, tol * 0.5)
            if flag == "DIVERGENT":
                return QuadResult(None, math.inf, "DIVERGENT")
        total += v
        err += e
    return QuadResult(total, err, "OK")


def _integrate_tail(f, start, tol) -> QuadResult:
    """Integral over [start, inf) by decay probing plus inversion."""
    r = start
    y0 = abs(_eval(f, r))
    y1 = abs(_eval(f, 2.0 * r))
    if y0 == 0.0 and y1 == 0.0:
        # probe a few more octaves before declaring the tail empty
        if all(abs(_eval(f, r * 2.0**j)) == 0.0 for j in range(2, 8)):
            return QuadResult(0.0, tol, "OK")
    decay = math.inf
    if y0 > 0.0 and y1 > 0.0:
        decay = math.log(y0 / y1) / math.log(2.0)
    if decay > 1.05:
        # inversion r = 1/s maps the tail to (0, 1/start]
        def g(s):
            return f(1.0 / s) / (s * s)
        return _integrate_finite(g, 0.0, 1.0 / start, tol)
    # sub-linear decay (or growth): doubling partial sums with a hard cap.
    # A profile whose crossover radius lies beyond ``start`` produces a few
    # growing windows before the asymptotic decay kicks in, so divergence is
    # declared only after several consecutive non-contracting windows --
    # enough to ride past any crossover while still trapping logarithmic
    # tails (whose windows never contract).
    total = 0.0
    prev_piece = None
    stalled = 0
    for _ in range(_PROBE_STEPS):
        try:
            piece, _ = _integrate_plain(f, r, 2.0 * r, tol)
        except _DepthExceeded:
            return QuadResult(None, math.inf, "DIVERGENT")
        total += piece
        if abs(total) > _DIVERGENCE_CAP:
            return QuadResult(None, math.inf, "DIVERGENT")
        if prev_piece is not None:
            stalled = stalled + 1 if abs(piece) >= 0.9 * abs(prev_piece) else 0
            if stalled >= 6:
                return QuadResult(None, math.inf, "DIVERGENT")
        if abs(piece) <= max(tol, 1e-14 * abs(total)):
            return QuadResult(total, max(tol, abs(piece)), "OK")
        prev_piece = piece
        r *= 2.0
    return QuadResult(None, math.inf, "DIVERGENT")


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    tol: float = 1e-10,
) -> QuadResult:
    """Integrate f over (a, b), b possibly infinite, robust to endpoint
    singularities.

    Returns a :class:`QuadResult`; a divergent integral is reported with
    ``flag="DIVERGENT"`` and ``value=None`` rather than raising.
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError("integrate: lower limit must be finite")
    if math.isinf(b):
        split = max(10.0, 2.0 * a + 2.0)
        head = _integrate_finite(f, a, split, tol)
        if head.flag != "OK":
            return head
        tail = _integrate_tail(f, split, tol)
        if tail.flag != "OK":
            return tail
        return QuadResult(head.value + tail.value, head.error + tail.error, "OK")
    return _integrate_finite(f, a, float(b), tol)


# ---------------------------------------------------------------------------
# endpoint limits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitResult:
    """An r -> 0+ limit estimate with error bound and convergence flag."""

    value: Optional[float]
    error: float
    flag: str  # "OK" or "DIVERGENT"


def richardson_limit(g: Callable[[float], float], r0: float = 1e-3) -> LimitResult:
    """Extrapolate lim_{r -> 0+} g(r) from samples at r0, r0/2, r0/4.

    Aitken acceleration of the three samples handles both smooth O(r)
    convergence and slower O(sqrt(r)) approach.  Non-contracting or
    exploding samples are flagged divergent.
    """
    try:
        g0, g1, g2 = g(r0), g(r0 / 2.0), g(r0 / 4.0)
    except (DomainError, ZeroDivisionError):
        return LimitResult(None, math.inf, "DIVERGENT")
    if not all(map(math.isfinite, (g0, g1, g2))):
        return LimitResult(None, math.inf, "DIVERGENT")
    if max(abs(g0), abs(g1), abs(g2)) > _DIVERGENCE_CAP:
        return LimitResult(None, math.inf, "DIVERGENT")
    d1 = g1 - g0
    d2 = g2 - g1
    scale = 1.0 + abs(g2)
    if abs(d2) <= 1e-13 * scale:
        return LimitResult(g2, max(abs(d2), 1e-15 * scale), "OK")
    if abs(d2) >= 0.97 * abs(d1):
        return LimitResult(None, math.inf, "DIVERGENT")
    ratio = d2 / d1
    limit = g2 + d2 * ratio / (1.0 - ratio)
    return LimitResult(limit, abs(d2 * ratio / (1.0 - ratio)) * 0.5 + 1e-15 * scale, "OK")
