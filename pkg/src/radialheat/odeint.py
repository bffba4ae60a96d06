"""Adaptive scalar ODE integration (Cash-Karp embedded 4(5) pair).

Used to integrate the gradient closures du/dr and du/dt along coordinate
lines during field reconstruction.  Only the scalar case is needed, so the
implementation stays deliberately small: one dependent variable, adaptive
step control on the embedded error estimate, and hard failure (rather than
silent degradation) when the step size underflows.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import NumericError

__all__ = ["integrate_ode"]

# Cash-Karp tableau
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0)
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0)


def integrate_ode(
    f: Callable[[float, float], float],
    x0: float,
    y0: float,
    x1: float,
    *,
    rtol: float = 1e-10,
    atol: float = 1e-13,
    max_steps: int = 100_000,
) -> float:
    """Integrate dy/dx = f(x, y) from (x0, y0) to x = x1 and return y(x1)."""
    if x1 == x0:
        return y0
    span = x1 - x0
    direction = 1.0 if span > 0 else -1.0
    h = span / 16.0
    x, y = x0, y0
    for _ in range(max_steps):
        if direction * (x + h - x1) > 0.0:
            h = x1 - x
        ks = [f(x, y)]
        for i in range(1, 6):
            yi = y + h * sum(aij * kj for aij, kj in zip(_A[i], ks))
            ks.append(f(x + _C[i] * h, yi))
        y5 = y + h * sum(b * k for b, k in zip(_B5, ks))
        y4 = y + h * sum(b * k for b, k in zip(_B4, ks))
        err = abs(y5 - y4)
        tol = atol + rtol * max(abs(y), abs(y5))
        if err <= tol:
            x += h
            y = y5
            if direction * (x - x1) >= 0.0 or x == x1:
                return y
            grow = 0.9 * (tol / err) ** 0.2 if err > 0.0 else 5.0
            h *= min(5.0, max(1.0, grow))
        else:
            h *= max(0.2, 0.9 * (tol / err) ** 0.25)
        if abs(h) < 1e-14 * (1.0 + abs(x)):
            raise NumericError("integrate_ode: step size underflow")
    raise NumericError("integrate_ode: too many steps")
