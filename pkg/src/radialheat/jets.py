"""Jet containers and forward-mode differentiation helpers.

``Jet2`` carries the value of a space-time field together with the three
derivatives that enter the heat operator: u_t, u_r and u_rr.  Closed-form
solutions are evaluated through the small forward-mode dual type ``Dual2``,
which propagates exactly those derivatives (first order in t, second order
in r) through arithmetic, so every catalog evaluator is written once as a
plain formula and the jet falls out with machine-precision derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Jet2", "SimilarityProfileJet", "Dual2", "t_var", "r_var", "const"]


@dataclass(frozen=True)
class Jet2:
    """Second-order jet of a field u(t, r): value plus (u_t, u_r, u_rr)."""

    u: float
    u_t: float
    u_r: float
    u_rr: float


@dataclass(frozen=True)
class SimilarityProfileJet:
    """Jet of a one-variable similarity profile: value plus two derivatives."""

    value: float
    d1: float
    d2: float


class Dual2:
    """Truncated Taylor element tracking (f, f_t, f_r, f_rr).

    The mixed derivative f_tr and the second time derivative are not
    tracked -- only the components needed by the heat operator are.
    """

    __slots__ = ("f", "ft", "fr", "frr")

    def __init__(self, f: float, ft: float = 0.0, fr: float = 0.0, frr: float = 0.0):
        self.f = f
        self.ft = ft
        self.fr = fr
        self.frr = frr

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Dual2):
            return Dual2(self.f + other.f, self.ft + other.ft, self.fr + other.fr, self.frr + other.frr)
        return Dual2(self.f + other, self.ft, self.fr, self.frr)

    __radd__ = __add__

    def __neg__(self):
        return Dual2(-self.f, -self.ft, -self.fr, -self.frr)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual2):
            return Dual2(
                self.f * other.f,
                self.ft * other.f + self.f * other.ft,
                self.fr * other.f + self.f * other.fr,
                self.frr * other.f + 2.0 * self.fr * other.fr + self.f * other.frr,
            )
        return Dual2(self.f * other, self.ft * other, self.fr * other, self.frr * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual2):
            return self * other._reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def _reciprocal(self):
        if self.f == 0.0:
            raise DomainError("division by a vanishing expression")
        return self._lift(1.0 / self.f, -1.0 / self.f**2, 2.0 / self.f**3)

    def _lift(self, phi: float, dphi: float, d2phi: float) -> "Dual2":
        """Compose with a scalar function phi given phi(f), phi'(f), phi''(f)."""
        return Dual2(
            phi,
            dphi * self.ft,
            dphi * self.fr,
            dphi * self.frr + d2phi * self.fr * self.fr,
        )

    def __pow__(self, e: float):
        f = self.f
        if e == int(e) and e >= 0:
            m = int(e)
            if m == 0:
                return Dual2(1.0)
            if m == 1:
                return Dual2(self.f, self.ft, self.fr, self.frr)
            if f == 0.0:
                # positive integer power of a vanishing value: derivative
                # chain is still finite for m >= 3; handle low orders exactly
                d1 = 0.0 if m >= 2 else 1.0
                d2 = 2.0 if m == 2 else 0.0
                return self._lift(0.0, d1, d2)
            return self._lift(f**m, m * f ** (m - 1), m * (m - 1) * f ** (m - 2))
        if e == int(e) and e < 0:
            if f == 0.0:
                raise DomainError("negative power of a vanishing expression")
            return self._lift(f**e, e * f ** (e - 1), e * (e - 1) * f ** (e - 2))
        if f <= 0.0:
            raise DomainError(
                f"fractional power base must be positive (base = {f!r}, exponent = {e!r})"
            )
        return self._lift(f**e, e * f ** (e - 1), e * (e - 1) * f ** (e - 2))

    def sqrt(self):
        return self**0.5

    def log(self):
        if self.f <= 0.0:
            raise DomainError("logarithm of a non-positive expression")
        return self._lift(math.log(self.f), 1.0 / self.f, -1.0 / self.f**2)

    def jet(self) -> Jet2:
        return Jet2(u=self.f, u_t=self.ft, u_r=self.fr, u_rr=self.frr)


def t_var(t0: float) -> Dual2:
    """The time coordinate as a dual seed."""
    return Dual2(float(t0), 1.0, 0.0, 0.0)


def r_var(r0: float) -> Dual2:
    """The radial coordinate as a dual seed."""
    return Dual2(float(r0), 0.0, 1.0, 0.0)


def const(c: float) -> Dual2:
    return Dual2(float(c))
