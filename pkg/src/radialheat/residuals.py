"""Pointwise residual operators for the PDE and its similarity reductions.

The master equation is

    u_t = u_rr + (n - 1)/r * u_r + k * sign(u)*|u|**(q+1)

and ``pde_residual`` returns (left side) - (right side) for a given jet, so
an exact solution yields zero.  Two one-variable reductions are supported
by ``similarity_ode_residual``:

* ``X_FORM`` -- profile V(x) with x = t/r**2 and u = r**p V(x):

      4*x**2*V'' - (1 + 2*x*(2*p + n - 4))*V' + p*(p + n - 2)*V
          + k*sign(V)*|V|**(q+1)

* ``XI_FORM`` -- profile U(xi) with xi = r/sqrt(t) and u = t**(p/2) U(xi)
  (direct substitution into the PDE, then multiplied by -t**(1-p/2) so the
  leading coefficient is +1):

      U'' + ((n-1)/xi + xi/2)*U' - (p/2)*U + k*sign(U)*|U|**(q+1)

Both reductions vanish identically on the profile of any scale-invariant
catalog member (time shift zero).
"""

from __future__ import annotations

import math

from .errors import ConfigurationError, DomainError, NumericError
from .jets import Jet2, SimilarityProfileJet
from .params import Parameters, signed_power

__all__ = [
    "pde_residual",
    "residual_scale",
    "similarity_ode_residual",
    "SIMILARITY_VARIANTS",
]

SIMILARITY_VARIANTS = ("X_FORM", "XI_FORM")


def pde_residual(params: Parameters, jet: Jet2, r: float) -> float:
    """u_t - u_rr - (n-1)/r*u_r - k*sign(u)|u|**(q+1) at radius r.

    Raises
    ------
    DomainError
        If r == 0 (the drift term is singular) or the source power is
        undefined at u = 0 (q + 1 <= 0).
    NumericError
        If the result is not finite.
    """
    r = float(r)
    if r == 0.0:
        raise DomainError("pde_residual: radius must be nonzero")
    try:
        source = params.k * signed_power(jet.u, params.q + 1.0)
    except ZeroDivisionError as exc:
        raise DomainError("pde_residual: source term undefined at u = 0") from exc
    res = jet.u_t - jet.u_rr - (params.n - 1.0) / r * jet.u_r - source
    if not math.isfinite(res):
        raise NumericError("pde_residual: non-finite residual")
    return res


def residual_scale(params: Parameters, jet: Jet2) -> float:
    """Natural magnitude scale 1 + |u_t| + |u_rr| + |k|*|u|**(q+1)."""
    try:
        source = abs(params.k) * abs(jet.u) ** (params.q + 1.0)
    except ZeroDivisionError:
        source = math.inf
    return 1.0 + abs(jet.u_t) + abs(jet.u_rr) + source


def similarity_ode_residual(
    params: Parameters,
    variant: str,
    point: float,
    profile: SimilarityProfileJet,
) -> float:
    """Residual of one of the two similarity ODE reductions.

    ``variant`` is ``"X_FORM"`` (independent variable x = t/r**2) or
    ``"XI_FORM"`` (independent variable xi = r/sqrt(t), which must be
    nonzero).
    """
    if variant not in SIMILARITY_VARIANTS:
        raise ConfigurationError(f"unknown similarity variant {variant!r}")
    x = float(point)
    v, d1, d2 = profile.value, profile.d1, profile.d2
    n, q, k, p = params.n, params.q, params.k, params.p
    try:
        source = k * signed_power(v, q + 1.0)
    except ZeroDivisionError as exc:
        raise DomainError("similarity_ode_residual: source undefined at 0") from exc
    if variant == "X_FORM":
        res = (4.0 * x * x * d2
               - (1.0 + 2.0 * x * (2.0 * p + n - 4.0)) * d1
               + p * (p + n - 2.0) * v
               + source)
    else:
        if x == 0.0:
            raise DomainError("similarity_ode_residual: xi must be nonzero")
        res = (d2
               + ((n - 1.0) / x + 0.5 * x) * d1
               - 0.5 * p * v
               + source)
    if not math.isfinite(res):
        raise NumericError("similarity_ode_residual: non-finite residual")
    return res
