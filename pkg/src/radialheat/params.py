"""Model parameters for the semilinear radial heat equation.

The equation under study is

    u_t = u_rr + (n - 1)/r * u_r + k * sign(u)*|u|**(q+1)

with spatial dimension ``n`` (not necessarily an integer), nonlinearity
power offset ``q`` and coupling ``k``.  Two derived exponents recur
throughout the package:

* ``p = -2/q`` -- the scaling weight of the solution under the parabolic
  scaling group (t, r, u) -> (lam**2 t, lam r, lam**p u);
* ``nu = 2 - n`` -- the power of the stationary state r**nu of the linear
  part (for n != 2).

Both satisfy exact algebraic invariants (``p*q == -2`` and ``nu + n == 2``)
that are enforced on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError

__all__ = ["Parameters", "make_parameters", "signed_power"]


@dataclass(frozen=True)
class Parameters:
    """Immutable parameter bundle (n, q, k) with derived exponents (p, nu)."""

    n: float
    q: float
    k: float
    p: float
    nu: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.n, self.q, self.k)):
            raise ConfigurationError("parameters must be finite numbers")
        if self.q == 0.0:
            raise ConfigurationError("nonlinearity offset q must be nonzero")
        # The invariants hold exactly by construction (p := -2/q, nu := 2-n);
        # direct construction is checked to one ulp-scale tolerance only, so
        # that re-multiplication rounding for non-dyadic q is not rejected.
        if abs(self.p * self.q + 2.0) > 1e-12 * (1.0 + abs(self.p * self.q)):
            raise ConfigurationError("scaling weight p must satisfy p*q == -2")
        if abs(self.nu + self.n - 2.0) > 1e-12 * (1.0 + abs(self.n)):
            raise ConfigurationError("stationary exponent nu must satisfy nu + n == 2")


def make_parameters(n: float, q: float, k: float) -> Parameters:
    """Validate (n, q, k) and attach the derived exponents p and nu.

    Raises
    ------
    ConfigurationError
        If q == 0 (the scaling weight would be undefined) or any value is
        non-finite.
    """
    n = float(n)
    q = float(q)
    k = float(k)
    if q == 0.0:
        raise ConfigurationError("nonlinearity offset q must be nonzero")
    if not all(math.isfinite(v) for v in (n, q, k)):
        raise ConfigurationError("parameters must be finite numbers")
    return Parameters(n=n, q=q, k=k, p=-2.0 / q, nu=2.0 - n)


def signed_power(u: float, e: float) -> float:
    """Odd extension of the power function: sign(u) * |u|**e.

    This is the branch convention used for the nonlinear source term
    everywhere in the package.  ``signed_power(0, e)`` is 0 for e > 0 and
    raises no error for e <= 0 only when u != 0.
    """
    if u > 0.0:
        return u**e
    if u < 0.0:
        return -((-u) ** e)
    if e > 0.0:
        return 0.0
    raise ZeroDivisionError("signed_power(0, e) undefined for e <= 0")
