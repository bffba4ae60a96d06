"""Integral diagnostics for exact entries and simulated fields.

Quantities (all over the radial domain, weighted):

* ``H``  — weighted mass  int u * w(r) dr
* ``E``  — energy         int (u_r**2 / 2 - k*f(u)) r**(n-1) dr
* ``S``  — source term    int k * sgn(u)|u|**(q+1) * w(r) dr
* ``F``  — origin flux    -lim_{r->0} w(r) * u_r

The mass weight w depends on the entry family: entries posed as genuinely
n-dimensional radial profiles use w = r**(n-1); entries built from the
planar-symmetry construction use w = r, and their mass balance gains a
point term nu * lim_{r->0} u.  The energy always uses the r**(n-1)
weight of the entry's own dimension.

Mass balance:   dH/dt = S + F (+ point term for the planar family).
Energy balance: dE/dt = -lim_{r->0} (r**(n-1) u_r u_t) - int u_t**2 r**(n-1) dr.

Each numeric field carries a flag: OK, DIVERGENT (integral or limit fails
to settle; value reported as None), TRUNCATED (grid data, domain edges
cut off), or UNAVAILABLE.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .catalog import ExactSolutionEntry
from .errors import DomainError, NumericError
from .params import signed_power
from .quadrature import integrate, richardson_limit
from .simulator import RadialField, Trajectory, discrete_energy
from .special import gamma_fn, hyp2f1

__all__ = [
    "DiagnosticsReport",
    "diagnostics_report",
    "closed_form_reference",
    "fit_decay_exponent",
    "energy_flux_check",
]

_TOL = 1e-10
_DT_FRACTION = 1e-4


@dataclass
class DiagnosticsReport:
    """Integral quantities at one time, with per-field flags.

    ``None`` values indicate the quantity did not converge (see the flag).
    ``identity_residual`` is dH/dt - (S + F + point term) when all pieces
    are finite.
    """

    t: float
    source_id: str
    H: Optional[float] = None
    E: Optional[float] = None
    S: Optional[float] = None
    F: Optional[float] = None
    point_source_term: Optional[float] = None
    point_combined: Optional[float] = None
    dH_dt: Optional[float] = None
    dE_dt: Optional[float] = None
    identity_residual: Optional[float] = None
    errors: dict = dc_field(default_factory=dict)
    flags: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "source_id": self.source_id,
            "H": self.H,
            "E": self.E,
            "S": self.S,
            "F": self.F,
            "point_source_term": self.point_source_term,
            "point_combined": self.point_combined,
            "dH_dt": self.dH_dt,
            "dE_dt": self.dE_dt,
            "identity_residual": self.identity_residual,
            "errors": dict(self.errors),
            "flags": dict(self.flags),
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _domain(entry: ExactSolutionEntry, t: float) -> Optional[tuple]:
    """Integration window (lo, hi) with hi possibly inf; None if empty."""
    sup = entry.support(t)
    if entry.has_cutoff:
        return sup  # bounded support or None (vanished)
    return (0.0, math.inf)


def _mass_weight(entry: ExactSolutionEntry) -> Callable[[float], float]:
    if entry.weight_family == "FULL_DIM":
        ex = entry.params.n - 1.0
        return lambda r: r**ex
    return lambda r: r


def _integrand_guard(fn):
    """Quadrature integrand adapter: domain holes integrate as zero."""
    def g(r: float) -> float:
        try:
            return fn(r)
        except (DomainError, ZeroDivisionError, OverflowError):
            return 0.0
    return g


def _f_antideriv(q: float, k: float, u: float) -> float:
    """Antiderivative f with f' = sgn(u)|u|**(q+1); used inside E."""
    if u == 0.0:
        if q + 2.0 > 0.0:
            return 0.0
        raise DomainError("energy density singular at u = 0")
    if abs(q + 2.0) < 1e-12:
        return math.log(abs(u))
    return abs(u) ** (q + 2.0) / (q + 2.0)


def _entry_integrals(entry: ExactSolutionEntry, t: float, rep: DiagnosticsReport):
    P = entry.params
    w = _mass_weight(entry)
    dom = _domain(entry, t)
    if dom is None:
        for name in ("H", "E", "S"):
            setattr(rep, name, 0.0)
            rep.flags[name] = "OK"
            rep.errors[name] = 0.0
        return

    lo, hi = dom

    def u_of(r):
        return entry.evaluate(t, r).u

    def h_density(r):
        return u_of(r) * w(r)

    def s_density(r):
        return P.k * signed_power(u_of(r), P.q + 1.0) * w(r)

    def e_density(r):
        jet = entry.evaluate(t, r)
        return (0.5 * jet.u_r**2 - P.k * _f_antideriv(P.q, P.k, jet.u)) \
            * r ** (P.n - 1.0)

    for name, fn in (("H", h_density), ("S", s_density), ("E", e_density)):
        res = integrate(_integrand_guard(fn), lo, hi, tol=_TOL)
        rep.flags[name] = res.flag
        if res.flag == "OK":
            setattr(rep, name, res.value)
            rep.errors[name] = res.error
        else:
            setattr(rep, name, None)


def _entry_limits(entry: ExactSolutionEntry, t: float, rep: DiagnosticsReport):
    P = entry.params
    w = _mass_weight(entry)
    dom = _domain(entry, t)
    if dom is None or dom[0] > 0.0:
        # support detached from the origin: no flux through r = 0
        rep.F = 0.0
        rep.flags["F"] = "OK"
        if entry.weight_family == "TWO_DIM":
            rep.point_source_term = 0.0
            rep.point_combined = 0.0
            rep.flags["point_source_term"] = "OK"
            rep.flags["point_combined"] = "OK"
        return

    r0 = min(1e-3, 0.25 * dom[1]) if math.isfinite(dom[1]) else 1e-3

    def flux(r):
        return -w(r) * entry.evaluate(t, r).u_r

    res = richardson_limit(_integrand_guard(flux), r0=r0)
    rep.flags["F"] = res.flag
    rep.F = res.value if res.flag == "OK" else None
    if res.flag == "OK":
        rep.errors["F"] = res.error

    if entry.weight_family == "TWO_DIM":
        nu = P.nu

        def point(r):
            return nu * entry.evaluate(t, r).u

        res_p = richardson_limit(_integrand_guard(point), r0=r0)
        rep.flags["point_source_term"] = res_p.flag
        rep.point_source_term = res_p.value if res_p.flag == "OK" else None

        # combined limit -(r u_r - nu u): individually divergent pieces
        # can cancel, so take the limit of the combination directly
        def combined(r):
            jet = entry.evaluate(t, r)
            return -(r * jet.u_r - nu * jet.u)

        res_c = richardson_limit(_integrand_guard(combined), r0=r0)
        rep.flags["point_combined"] = res_c.flag
        rep.point_combined = res_c.value if res_c.flag == "OK" else None


def _entry_time_derivatives(entry: ExactSolutionEntry, t: float,
                            rep: DiagnosticsReport):
    """Central differences of H and E over a small time window."""
    dt = _DT_FRACTION * max(abs(t), 1.0)

    def quantity_at(name: str, s: float) -> Optional[float]:
        sub = DiagnosticsReport(t=s, source_id=entry.id)
        _entry_integrals(entry, s, sub)
        return getattr(sub, name)

    for name, key in (("H", "dH_dt"), ("E", "dE_dt")):
        if getattr(rep, name) is None:
            rep.flags[key] = "DIVERGENT"
            continue
        plus = quantity_at(name, t + dt)
        minus = quantity_at(name, t - dt)
        if plus is None or minus is None:
            rep.flags[key] = "DIVERGENT"
            continue
        setattr(rep, key, (plus - minus) / (2.0 * dt))
        rep.flags[key] = "OK"


def _field_report(field: RadialField, params, source_id: str) -> DiagnosticsReport:
    """Grid diagnostics by trapezoid rule; edges are wherever the grid ends,
    so every integral is flagged TRUNCATED rather than exact."""
    import numpy as np

    rep = DiagnosticsReport(t=field.t, source_id=source_id)
    r = field.grid()
    u = field.values
    w = r ** (params.n - 1.0)
    with np.errstate(all="ignore"):
        src = params.k * np.sign(u) * np.abs(u) ** (params.q + 1.0)
    rep.H = float(np.trapezoid(u * w, dx=field.dr))
    rep.S = float(np.trapezoid(src * w, dx=field.dr))
    rep.E = discrete_energy(params, field)
    u_r = np.gradient(u, field.dr, edge_order=2)
    rep.F = float(-w[0] * u_r[0])
    for name in ("H", "S", "E", "F"):
        value = getattr(rep, name)
        if value is None or not math.isfinite(value):
            setattr(rep, name, None)
            rep.flags[name] = "DIVERGENT"
        else:
            rep.flags[name] = "TRUNCATED"
    return rep


def diagnostics_report(source, t: Optional[float] = None,
                       params=None) -> DiagnosticsReport:
    """Diagnostics for a catalog entry (quadrature, needs ``t``) or a
    :class:`RadialField` (trapezoid on the grid, needs ``params``)."""
    if isinstance(source, ExactSolutionEntry):
        if t is None:
            raise NumericError("entry diagnostics require an evaluation time")
        rep = DiagnosticsReport(t=float(t), source_id=source.id)
        _entry_integrals(source, float(t), rep)
        _entry_limits(source, float(t), rep)
        _entry_time_derivatives(source, float(t), rep)
        boundary_part = None
        if source.weight_family == "TWO_DIM":
            if rep.F is not None and rep.point_source_term is not None:
                boundary_part = rep.F + rep.point_source_term
            elif rep.point_combined is not None:
                # individually divergent origin terms can cancel in the
                # combination; fall back to the joint limit
                boundary_part = rep.point_combined
        else:
            boundary_part = rep.F
        if rep.dH_dt is not None and rep.S is not None and boundary_part is not None:
            rep.identity_residual = rep.dH_dt - (rep.S + boundary_part)
            rep.flags["identity_residual"] = "OK"
        else:
            rep.flags["identity_residual"] = "UNAVAILABLE"
        return rep
    if isinstance(source, RadialField):
        if params is None:
            raise NumericError("field diagnostics require model parameters")
        return _field_report(source, params, source_id="field")
    raise NumericError(f"unsupported diagnostics source {type(source)!r}")


# --- closed-form references ------------------------------------------------

def _cf_usol2_cutoff(entry: ExactSolutionEntry, quantity: str, t: float):
    P = entry.params
    n, k = P.n, P.k
    beta = entry.constants["beta"]
    alpha = entry.constants["alpha"]
    if t <= 0.0:
        return None
    if quantity == "H":
        return beta * (n - 4.0) * t ** (n - 1.0) / (n - 1.0)
    if quantity == "F":
        return beta * (n - 2.0) * t ** (n - 2.0)
    if quantity == "S":
        return (k * beta ** (P.q + 1.0) * alpha**4 * t ** (n - 2.0)
                / (2.0 * (n - 3.0) * (n - 2.0)))
    if quantity == "dH_dt":
        return beta * (n - 4.0) * t ** (n - 2.0)
    return None


def _cf_twodim(entry: ExactSolutionEntry, quantity: str, t: float):
    P = entry.params
    nu = P.nu
    alpha = entry.constants["alpha"]
    beta = entry.constants["beta"]
    c = entry.constants["c"]
    tc = t + c
    if tc <= 0.0:
        return None
    if quantity == "H":
        if nu <= 2.0:
            return None  # mass integral diverges at infinity
        g = gamma_fn((nu + 2.0) / 2.0).value * gamma_fn((nu - 2.0) / 2.0).value \
            / gamma_fn(nu).value
        return 0.5 * beta * (alpha * tc) ** (1.0 - 0.5 * nu) * g
    if quantity == "E":
        if nu <= 0.0:
            return None
        g = gamma_fn(1.0 + 0.5 * nu).value * gamma_fn(1.5 * nu).value \
            / gamma_fn(2.0 * nu + 2.0).value
        pref = beta**2 * nu**2 * (nu + 2.0) ** (1.0 - 1.5 * nu) * 2.0 ** (-1.5 * nu)
        return pref * g * tc ** (-1.5 * nu)
    if quantity == "S":
        h = _cf_twodim(entry, "H", t)
        return None if h is None else -0.5 * (nu - 2.0) * h / tc
    if quantity == "dH_dt":
        h = _cf_twodim(entry, "H", t)
        return None if h is None else (1.0 - 0.5 * nu) * h / tc
    if quantity == "dE_dt":
        e = _cf_twodim(entry, "E", t)
        return None if e is None else -1.5 * nu * e / tc
    if quantity in ("F", "point_source_term"):
        return 0.0 if nu > 1.0 else None
    return None


def _cf_nonsim1(entry: ExactSolutionEntry, quantity: str, t: float):
    P = entry.params
    k = P.k
    alpha = entry.constants["alpha"]
    beta = entry.constants["beta"]
    if quantity not in ("H", "dH_dt"):
        return None
    if t >= alpha:
        return 0.0 if quantity == "H" else None
    A = 3.0 * (alpha - t)
    D = 3.0 * (alpha - beta)
    if t >= beta:
        # support is a disk: hypergeometric profile in A/D
        C = 0.4 * math.sqrt(2.0 / math.pi) * gamma_fn(0.75).value**2 * k**0.25
        if quantity == "H":
            return C * A**1.25 * hyp2f1(-0.5, 1.5, 2.25, A / D).value
        f = hyp2f1(-0.5, 1.5, 2.25, A / D).value
        g1 = hyp2f1(0.5, 2.5, 3.25, A / D).value
        return -3.0 * C * (1.25 * A**0.25 * f - A**1.25 * g1 / (3.0 * D))
    # annular support: profile in D/A
    Cl = (math.pi / 16.0) * k**0.25 * D**1.5
    if quantity == "H":
        return Cl * A**-0.25 * hyp2f1(0.25, 1.5, 3.0, D / A).value
    f2 = hyp2f1(0.25, 1.5, 3.0, D / A).value
    g2 = hyp2f1(1.25, 2.5, 4.0, D / A).value
    return Cl * (0.75 * A**-1.25 * f2 + (3.0 * D / 8.0) * A**-2.25 * g2)


_CLOSED_FORMS = {
    "USOL2_CUTOFF": _cf_usol2_cutoff,
    "TWODIM_USOL2": _cf_twodim,
    "TWODIM_USOL2_CUTOFF": _cf_twodim,
    "NONSIM1_CUTOFF": _cf_nonsim1,
}


def closed_form_reference(entry: ExactSolutionEntry, quantity: str,
                          t: float) -> Optional[float]:
    """Closed-form value of a diagnostic quantity where one is known.

    Supported: USOL2_CUTOFF (H, F, S, dH_dt), TWODIM_USOL2 families
    (H for nu > 2, E for nu > 0, S, dH_dt, dE_dt, F), NONSIM1_CUTOFF
    (H and dH_dt on both support regimes).  Returns None when no closed
    form applies.
    """
    fn = _CLOSED_FORMS.get(entry.id)
    if fn is None:
        return None
    return fn(entry, quantity, float(t))


# --- late-time decay fitting ------------------------------------------------

def fit_decay_exponent(times, values) -> float:
    """Least-squares slope of log|value| against log(t).

    Requires at least five strictly positive samples at strictly
    increasing positive times.  A constant sequence fits exponent 0.
    """
    import numpy as np

    ts = [float(s) for s in times]
    vs = [float(v) for v in values]
    if len(ts) != len(vs) or len(ts) < 5:
        raise NumericError("need at least five (time, value) samples")
    if any(s <= 0.0 for s in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise NumericError("times must be positive and strictly increasing")
    if any(v <= 0.0 or not math.isfinite(v) for v in vs):
        raise NumericError("values must be finite and positive for a log fit")
    logt = np.log(np.asarray(ts))
    logv = np.log(np.asarray(vs))
    if float(np.ptp(logv)) < 1e-14:
        return 0.0
    return float(np.polyfit(logt, logv, 1)[0])


# --- energy flux identity ----------------------------------------------------

def _entry_energy_flux(entry: ExactSolutionEntry, t: float) -> dict:
    P = entry.params
    dom = _domain(entry, t)
    out = {"t": t, "flag": "OK", "dE_dt": None, "boundary_flux": None,
           "dissipation": None, "residual": None}
    if dom is None:
        out.update(dE_dt=0.0, boundary_flux=0.0, dissipation=0.0, residual=0.0)
        return out
    lo, hi = dom

    rep = DiagnosticsReport(t=t, source_id=entry.id)
    _entry_integrals(entry, t, rep)
    if rep.E is None:
        out["flag"] = "DIVERGENT"
        return out
    _entry_time_derivatives(entry, t, rep)
    if rep.dE_dt is None:
        out["flag"] = "DIVERGENT"
        return out

    def dissipation_density(r):
        jet = entry.evaluate(t, r)
        return jet.u_t**2 * r ** (P.n - 1.0)

    res_d = integrate(_integrand_guard(dissipation_density), lo, hi, tol=_TOL)
    if res_d.flag != "OK":
        out["flag"] = res_d.flag
        return out

    if lo > 0.0:
        bflux = 0.0
    else:
        def boundary_density(r):
            jet = entry.evaluate(t, r)
            return -(r ** (P.n - 1.0)) * jet.u_r * jet.u_t

        res_b = richardson_limit(_integrand_guard(boundary_density), r0=1e-3)
        if res_b.flag != "OK":
            out["flag"] = res_b.flag
            return out
        bflux = res_b.value

    out["dE_dt"] = rep.dE_dt
    out["boundary_flux"] = bflux
    out["dissipation"] = res_d.value
    out["residual"] = rep.dE_dt - (bflux - res_d.value)
    return out


def _trajectory_energy_flux(traj: Trajectory, params) -> list:
    """Flux identity on consecutive snapshot triples of a simulated run."""
    import numpy as np

    out = []
    snaps = traj.snapshots
    for i in range(1, len(snaps) - 1):
        t_prev, f_prev = snaps[i - 1]
        t_mid, f_mid = snaps[i]
        t_next, f_next = snaps[i + 1]
        dt = t_next - t_prev
        e_prev = discrete_energy(params, f_prev)
        e_next = discrete_energy(params, f_next)
        de = (e_next - e_prev) / dt
        u_t = (f_next.values - f_prev.values) / dt
        r = f_mid.grid()
        w = r ** (params.n - 1.0)
        dissip = float(np.trapezoid(u_t**2 * w, dx=f_mid.dr))
        u_r = np.gradient(f_mid.values, f_mid.dr, edge_order=2)
        bflux = float(-w[0] * u_r[0] * u_t[0] + w[-1] * u_r[-1] * u_t[-1])
        out.append({"t": t_mid, "flag": "TRUNCATED", "dE_dt": de,
                    "boundary_flux": bflux, "dissipation": dissip,
                    "residual": de - (bflux - dissip)})
    return out


def energy_flux_check(source, t: Optional[float] = None, params=None):
    """Energy-balance identity residual.

    For a catalog entry at time ``t``: returns one record with ``dE_dt``,
    the origin boundary flux, the dissipation integral, and the identity
    residual (flag DIVERGENT when the energy itself does not converge).
    For a simulated :class:`Trajectory` (with ``params``): one record per
    interior snapshot, each flagged TRUNCATED since domain edges are
    wherever the grid ends.
    """
    if isinstance(source, ExactSolutionEntry):
        if t is None:
            raise NumericError("entry flux check requires an evaluation time")
        return _entry_energy_flux(source, float(t))
    if isinstance(source, Trajectory):
        if params is None:
            raise NumericError("trajectory flux check requires model parameters")
        return _trajectory_energy_flux(source, params)
    raise NumericError(f"unsupported flux-check source {type(source)!r}")
