"""Catalog of closed-form solutions of the radial semilinear heat equation.

Each entry packages one exact solution family u(t, r) of

    u_t = u_rr + (n - 1)/r * u_r + k * sign(u)*|u|**(q+1)

together with its parameter constraints, free constants, validity predicate
and spatial support.  Evaluation goes through forward-mode duals
(:mod:`.jets`), so every entry returns a full second-order jet
(u, u_t, u_r, u_rr) with machine-precision derivatives.

Entry identifiers
-----------------
``USOL1``                spatially homogeneous power-of-time solution
``USOL2``                stationary-profile family with a moving zero level
``USOL3``                square-root family at (q, n) = (-4, 5/2)
``USOL4``..``USOL6``     rational families at (q, n) = (2, 5/2), k < 0
``USOL2_CUTOFF``         compact-support glue of USOL2 behind a moving front
``TWODIM_USOL2``         two-parameter family written in nu = 2 - n form
``TWODIM_USOL2_CUTOFF``  compact-support variant of the above (nu < -2)
``NONSIM1_CUTOFF``       annulus/disk supported non-self-similar solution

Entries whose printed form carries a sign choice accept ``branch`` in
{+1, -1}; the remaining entries admit only the positive branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ConfigurationError, DomainError
from .jets import Dual2, Jet2, const, r_var, t_var
from .params import Parameters, make_parameters

__all__ = [
    "ENTRY_IDS",
    "ExactSolutionEntry",
    "make_entry",
    "canonical_entry",
    "default_window",
    "eval_exact",
    "entry_to_json",
    "entry_from_json",
]

ENTRY_IDS = (
    "USOL1",
    "USOL2",
    "USOL3",
    "USOL4",
    "USOL5",
    "USOL6",
    "USOL2_CUTOFF",
    "TWODIM_USOL2",
    "TWODIM_USOL2_CUTOFF",
    "NONSIM1_CUTOFF",
)

_BRANCHED = {"USOL2", "USOL3", "USOL4", "USOL5", "USOL6"}
_CUTOFF = {"USOL2_CUTOFF", "TWODIM_USOL2_CUTOFF", "NONSIM1_CUTOFF"}

# Entries whose densities use the full n-dimensional radial weight r**(n-1)
# in conserved-quantity diagnostics; all remaining families use the planar
# weight r (see diagnostics module).
_FULL_DIM_WEIGHT = {"USOL1", "USOL2", "USOL2_CUTOFF"}

_ZERO_JET = Jet2(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ExactSolutionEntry:
    """One closed-form solution with its parameters and free constants."""

    id: str
    params: Parameters
    branch: int
    constants: dict

    # -- geometry ---------------------------------------------------------

    @property
    def spatially_homogeneous(self) -> bool:
        return self.id == "USOL1"

    @property
    def has_cutoff(self) -> bool:
        return self.id in _CUTOFF

    @property
    def weight_family(self) -> str:
        """Radial weight family for integral diagnostics.

        ``"FULL_DIM"`` -> weight r**(n-1); ``"TWO_DIM"`` -> weight r.
        """
        return "FULL_DIM" if self.id in _FULL_DIM_WEIGHT else "TWO_DIM"

    def support(self, t: float) -> Optional[tuple]:
        """Open radial interval (lo, hi) where the solution can be nonzero.

        Returns ``None`` when the support is empty at time ``t``.  For
        entries without a cutoff front this is (0, inf) regardless of any
        further branch-domain restrictions, which are reported pointwise by
        :meth:`validity`.
        """
        return _SUPPORT[self.id](self, float(t))

    # -- evaluation --------------------------------------------------------

    def validity(self, t: float, r: float) -> Optional[str]:
        """Return None when (t, r) is evaluable, else a human-readable reason."""
        return _VALIDITY[self.id](self, float(t), float(r))

    def evaluate(self, t: float, r: float) -> Jet2:
        """Evaluate the jet (u, u_t, u_r, u_rr) at (t, r).

        Raises
        ------
        DomainError
            If the validity predicate fails at (t, r).
        """
        t = float(t)
        r = float(r)
        reason = self.validity(t, r)
        if reason is not None:
            raise DomainError(f"{self.id}: {reason}")
        if self.id in _CUTOFF:
            sup = self.support(t)
            if sup is None or not (sup[0] < r < sup[1]):
                return _ZERO_JET
        return _EVAL[self.id](self, t, r).jet()


def eval_exact(entry: ExactSolutionEntry, t: float, r: float) -> Jet2:
    """Module-level alias for :meth:`ExactSolutionEntry.evaluate`."""
    return entry.evaluate(t, r)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigurationError(message)


def _near_integer(x: float) -> bool:
    return abs(x - round(x)) < 1e-12


def make_entry(
    entry_id: str,
    *,
    n: float = None,
    q: float = None,
    k: float = None,
    nu: float = None,
    branch: int = 1,
    c: float = 0.0,
    alpha: float = None,
    beta: float = None,
) -> ExactSolutionEntry:
    """Construct a catalog entry, deriving constrained parameters.

    Per-entry rules (a ``ConfigurationError`` is raised on violation):

    * ``USOL1``: n, q, k free (q != 0); constant ``c``.
    * ``USOL2``: n not in {2, 3, 4}; q is derived as 2/(2-n); k must make
      -k/((n-2)(n-3)) positive; constant ``c``; branch in {+1, -1}.
    * ``USOL3``: (q, n) fixed to (-4, 5/2); k > 0; constant ``c``; branch.
    * ``USOL4``/``USOL5``/``USOL6``: (q, n) fixed to (2, 5/2); k < 0;
      constant ``c``; branch.
    * ``USOL2_CUTOFF``: n > 4; k < 0; q derived as 2/(2-n); the front slope
      ``alpha`` and amplitude ``beta`` are derived from (n, k).
    * ``TWODIM_USOL2``: give ``nu`` (or n = 2 - nu); nu not in {0, -1, -2};
      -4*nu*(nu+1)/k must be positive; constant ``c``.
    * ``TWODIM_USOL2_CUTOFF``: nu < -2 and k < 0; constant ``c``.
    * ``NONSIM1_CUTOFF``: (q, n) fixed to (-4, 5/2); k > 0; requires
      ``alpha > beta > 0``.
    """
    _require(entry_id in ENTRY_IDS, f"unknown entry id {entry_id!r}")
    _require(branch in (1, -1), "branch must be +1 or -1")
    if branch == -1:
        _require(entry_id in _BRANCHED, f"{entry_id} admits only the positive branch")
    _require(k is not None, "coupling k is required")
    k = float(k)
    constants: dict = {}

    if entry_id == "USOL1":
        _require(n is not None and q is not None, "USOL1 requires n and q")
        params = make_parameters(n, q, k)
        constants["c"] = float(c)

    elif entry_id in ("USOL2", "USOL2_CUTOFF"):
        _require(n is not None, f"{entry_id} requires n")
        n = float(n)
        _require(abs(n - 2) > 1e-12 and abs(n - 3) > 1e-12 and abs(n - 4) > 1e-12,
                 f"{entry_id} requires n outside {{2, 3, 4}}")
        q_derived = 2.0 / (2.0 - n)
        if q is not None:
            _require(abs(float(q) - q_derived) <= 1e-12 * (1 + abs(q_derived)),
                     f"{entry_id}: q is determined by n as 2/(2-n)")
        params = make_parameters(n, q_derived, k)
        if entry_id == "USOL2":
            _require(-k / ((n - 2.0) * (n - 3.0)) > 0.0,
                     "USOL2 requires -k/((n-2)(n-3)) > 0")
            constants["c"] = float(c)
        else:
            _require(n > 4.0, "USOL2_CUTOFF requires n > 4")
            _require(k < 0.0, "USOL2_CUTOFF requires k < 0")
            constants["alpha"] = math.sqrt(2.0 * (n - 4.0))
            constants["beta"] = ((n - 2.0) * (n - 3.0) / (abs(k) * (n - 4.0) ** 2)) ** (1.0 - n / 2.0)

    elif entry_id == "USOL3":
        _check_fixed(entry_id, n, q, -4.0, 2.5)
        _require(k > 0.0, "USOL3 requires k > 0")
        params = make_parameters(2.5, -4.0, k)
        constants["c"] = float(c)

    elif entry_id in ("USOL4", "USOL5", "USOL6"):
        _check_fixed(entry_id, n, q, 2.0, 2.5)
        _require(k < 0.0, f"{entry_id} requires k < 0")
        params = make_parameters(2.5, 2.0, k)
        constants["c"] = float(c)

    elif entry_id in ("TWODIM_USOL2", "TWODIM_USOL2_CUTOFF"):
        if nu is None:
            _require(n is not None, f"{entry_id} requires nu (or n = 2 - nu)")
            nu = 2.0 - float(n)
        nu = float(nu)
        if n is not None:
            _require(abs(float(n) - (2.0 - nu)) <= 1e-12 * (1 + abs(nu)),
                     f"{entry_id}: n and nu must satisfy n = 2 - nu")
        _require(min(abs(nu), abs(nu + 1), abs(nu + 2)) > 1e-12,
                 f"{entry_id} requires nu outside {{0, -1, -2}}")
        if entry_id == "TWODIM_USOL2_CUTOFF":
            _require(nu < -2.0, "TWODIM_USOL2_CUTOFF requires nu < -2")
            _require(k < 0.0, "TWODIM_USOL2_CUTOFF requires k < 0")
        base = -4.0 * nu * (nu + 1.0) / k
        _require(base > 0.0, f"{entry_id} requires -4*nu*(nu+1)/k > 0")
        params = make_parameters(2.0 - nu, 2.0 / nu, k)
        constants["c"] = float(c)
        constants["alpha"] = 2.0 * (nu + 2.0)
        constants["beta"] = base ** (nu / 2.0)

    else:  # NONSIM1_CUTOFF
        _check_fixed(entry_id, n, q, -4.0, 2.5)
        _require(k > 0.0, "NONSIM1_CUTOFF requires k > 0")
        _require(alpha is not None and beta is not None,
                 "NONSIM1_CUTOFF requires alpha and beta")
        alpha = float(alpha)
        beta = float(beta)
        _require(alpha > beta > 0.0, "NONSIM1_CUTOFF requires alpha > beta > 0")
        params = make_parameters(2.5, -4.0, k)
        constants["alpha"] = alpha
        constants["beta"] = beta
        constants["gamma"] = math.sqrt(k) / (3.0 * (alpha - beta))

    return ExactSolutionEntry(id=entry_id, params=params, branch=branch, constants=constants)


def _check_fixed(entry_id: str, n, q, q_fixed: float, n_fixed: float) -> None:
    if q is not None:
        _require(abs(float(q) - q_fixed) < 1e-12, f"{entry_id} requires q = {q_fixed}")
    if n is not None:
        _require(abs(float(n) - n_fixed) < 1e-12, f"{entry_id} requires n = {n_fixed}")


# ---------------------------------------------------------------------------
# validity predicates
# ---------------------------------------------------------------------------

def _v_usol1(e, t, r):
    arg = -e.params.k * e.params.q * (t + e.constants["c"])
    if arg <= 0.0:
        return "time argument -k*q*(t+c) must be positive"
    return None


def _v_usol2(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    n = e.params.n
    if not _near_integer(n - 2.0):
        inner = _usol2_inner_value(e, t, r)
        if inner <= 0.0:
            return "power base must be positive for non-integer n-2"
    return None


def _v_usol3(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    inner = (e.branch * math.sqrt(e.params.k)
             * (1.0 + e.constants["c"] * (3.0 * t + r * r)) * (3.0 * t / r + r))
    if inner <= 0.0:
        return "square-root argument must be positive"
    return None


def _v_usol4(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    if r * (15.0 * t + r * r) + e.constants["c"] * math.sqrt(r) == 0.0:
        return "denominator vanishes"
    return None


def _v_usol5(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    if 3.0 * (t + e.constants["c"]) + r * r == 0.0:
        return "denominator vanishes"
    return None


def _v_usol6(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    if 15.0 * (t + e.constants["c"]) + r * r == 0.0:
        return "denominator vanishes"
    return None


def _v_cutoff_generic(e, t, r):
    if r < 0.0:
        return "radius must be nonnegative"
    sup = e.support(t)
    if r == 0.0 and sup is not None and sup[0] == 0.0:
        return "origin is singular inside the support"
    return None


def _v_usol2_cutoff(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    return None


def _v_twodim(e, t, r):
    if r <= 0.0:
        return "radius must be positive"
    nu = e.params.nu
    base = e.constants["alpha"] * (t + e.constants["c"]) + r * r
    if base == 0.0:
        return "power base vanishes"
    if base < 0.0 and not _near_integer(nu):
        return "power base must be positive"
    return None


_VALIDITY: dict = {
    "USOL1": _v_usol1,
    "USOL2": _v_usol2,
    "USOL3": _v_usol3,
    "USOL4": _v_usol4,
    "USOL5": _v_usol5,
    "USOL6": _v_usol6,
    "USOL2_CUTOFF": _v_usol2_cutoff,
    "TWODIM_USOL2": _v_twodim,
    "TWODIM_USOL2_CUTOFF": _v_cutoff_generic,
    "NONSIM1_CUTOFF": _v_cutoff_generic,
}


# ---------------------------------------------------------------------------
# support intervals
# ---------------------------------------------------------------------------

def _sup_all(e, t):
    return (0.0, math.inf)


def _sup_usol2_cutoff(e, t):
    if t <= 0.0:
        return None
    return (0.0, e.constants["alpha"] * math.sqrt(t))


def _sup_twodim_cutoff(e, t):
    s = abs(e.constants["alpha"]) * (t + e.constants["c"])
    if s <= 0.0:
        return None
    return (0.0, math.sqrt(s))


def _sup_nonsim1(e, t):
    a = e.constants["alpha"]
    b = e.constants["beta"]
    if t >= a:
        return None
    hi = math.sqrt(3.0 * (a - t))
    if t >= b:
        return (0.0, hi)
    return (math.sqrt(3.0 * (b - t)), hi)


_SUPPORT: dict = {
    "USOL1": _sup_all,
    "USOL2": _sup_all,
    "USOL3": _sup_all,
    "USOL4": _sup_all,
    "USOL5": _sup_all,
    "USOL6": _sup_all,
    "USOL2_CUTOFF": _sup_usol2_cutoff,
    "TWODIM_USOL2": _sup_all,
    "TWODIM_USOL2_CUTOFF": _sup_twodim_cutoff,
    "NONSIM1_CUTOFF": _sup_nonsim1,
}


# ---------------------------------------------------------------------------
# dual-number evaluators (called only at validated points, strictly inside
# the support for cutoff entries)
# ---------------------------------------------------------------------------

def _usol2_inner_value(e, t, r):
    n, k = e.params.n, e.params.k
    coef = math.sqrt(-k / ((n - 2.0) * (n - 3.0)))
    return e.branch * coef * (r / 2.0 - (n - 4.0) * (t + e.constants.get("c", 0.0)) / r)


def _e_usol1(e, t, r):
    P = e.params
    td = t_var(t)
    return (const(-P.k * P.q) * (td + e.constants["c"])) ** (-1.0 / P.q)


def _e_usol2(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    coef = e.branch * math.sqrt(-P.k / ((P.n - 2.0) * (P.n - 3.0)))
    inner = const(coef) * (rd / 2.0 - const(P.n - 4.0) * (td + e.constants["c"]) / rd)
    return inner ** (P.n - 2.0)


def _e_usol3(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    shape = 1.0 + const(e.constants["c"]) * (3.0 * td + rd * rd)
    inner = const(e.branch * math.sqrt(P.k)) * shape * (3.0 * td / rd + rd)
    return inner**0.5


def _e_usol4(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    s = math.sqrt(-2.0 * P.k)
    num = 5.0 * (3.0 * td + rd * rd)
    den = (rd * (15.0 * td + rd * rd) + const(e.constants["c"]) * rd**0.5) * s
    return const(float(e.branch)) * num / den


def _e_usol5(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    s = math.sqrt(-2.0 * P.k)
    tc = td + e.constants["c"]
    num = 3.0 * (tc - rd * rd)
    den = rd * (3.0 * tc + rd * rd) * s
    return const(float(e.branch)) * num / den


def _e_usol6(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    s = math.sqrt(-2.0 * P.k)
    tc = td + e.constants["c"]
    num = 5.0 * (3.0 * tc + rd * rd)
    den = rd * (15.0 * tc + rd * rd) * s
    return const(float(e.branch)) * num / den


def _e_usol2_cutoff(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    a, b = e.constants["alpha"], e.constants["beta"]
    return const(b) * rd ** (2.0 - P.n) * (td - (rd / a) ** 2) ** (P.n - 2.0)


def _e_twodim(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    nu = P.nu
    a, b = e.constants["alpha"], e.constants["beta"]
    return const(b) * rd**nu * (const(a) * (td + e.constants["c"]) + rd * rd) ** (-nu)


def _e_twodim_cutoff(e, t, r):
    P = e.params
    td, rd = t_var(t), r_var(r)
    nu = P.nu
    a, b = e.constants["alpha"], e.constants["beta"]
    return const(b) * rd**nu * (const(abs(a)) * (td + e.constants["c"]) - rd * rd) ** (-nu)


def _e_nonsim1(e, t, r):
    td, rd = t_var(t), r_var(r)
    a, b, g = e.constants["alpha"], e.constants["beta"], e.constants["gamma"]
    outer = 3.0 * (const(a) - td) - rd * rd
    inner = 3.0 * (td - const(b)) + rd * rd
    return (const(g) * outer * inner) ** 0.5 * rd ** (-0.5)


_EVAL: dict = {
    "USOL1": _e_usol1,
    "USOL2": _e_usol2,
    "USOL3": _e_usol3,
    "USOL4": _e_usol4,
    "USOL5": _e_usol5,
    "USOL6": _e_usol6,
    "USOL2_CUTOFF": _e_usol2_cutoff,
    "TWODIM_USOL2": _e_twodim,
    "TWODIM_USOL2_CUTOFF": _e_twodim_cutoff,
    "NONSIM1_CUTOFF": _e_nonsim1,
}


# ---------------------------------------------------------------------------
# canonical instances and verification windows
# ---------------------------------------------------------------------------

_CANONICAL_ARGS: dict = {
    "USOL1": dict(n=3.0, q=2.0, k=-1.0, c=0.0),
    "USOL2": dict(n=6.0, k=-1.0, c=0.0, branch=1),
    "USOL3": dict(k=1.0, c=0.2, branch=1),
    "USOL4": dict(k=-0.5, c=2.0, branch=1),
    "USOL5": dict(k=-1.0, c=0.0, branch=1),
    "USOL6": dict(k=-1.0, c=0.0, branch=1),
    "USOL2_CUTOFF": dict(n=6.0, k=-1.0),
    "TWODIM_USOL2": dict(nu=3.0, k=-1.0, c=0.0),
    "TWODIM_USOL2_CUTOFF": dict(nu=-3.0, k=-1.0, c=0.0),
    "NONSIM1_CUTOFF": dict(k=1.0, alpha=20.0, beta=5.0),
}

# (t_lo, t_hi, r_lo, r_hi) windows on which the canonical instances are
# defined (and strictly inside the support for cutoff entries), with the
# solution nonnegative; used for residual verification grids.
_DEFAULT_WINDOWS: dict = {
    "USOL1": (0.5, 2.0, 0.5, 2.0),
    "USOL2": (0.1, 1.0, 0.5, 3.0),
    "USOL3": (0.3, 1.5, 0.4, 2.5),
    "USOL4": (0.2, 1.2, 0.3, 2.0),
    "USOL5": (1.0, 3.0, 0.3, 0.9),
    "USOL6": (0.1, 1.0, 0.5, 3.0),
    "USOL2_CUTOFF": (0.5, 1.5, 0.1, 1.2),
    "TWODIM_USOL2": (0.5, 2.0, 0.3, 3.0),
    "TWODIM_USOL2_CUTOFF": (1.0, 2.0, 0.2, 1.2),
    "NONSIM1_CUTOFF": (6.0, 14.0, 0.5, 4.0),
}


def canonical_entry(entry_id: str) -> ExactSolutionEntry:
    """A standard, fully-valid instance of the entry (used by CLI defaults)."""
    _require(entry_id in ENTRY_IDS, f"unknown entry id {entry_id!r}")
    return make_entry(entry_id, **_CANONICAL_ARGS[entry_id])


def default_window(entry_id: str) -> tuple:
    """(t_lo, t_hi, r_lo, r_hi) verification window for the canonical entry."""
    _require(entry_id in ENTRY_IDS, f"unknown entry id {entry_id!r}")
    return _DEFAULT_WINDOWS[entry_id]


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------

def entry_to_json(entry: ExactSolutionEntry) -> dict:
    """Serialize to a plain dict {id, n, q, k, branch, constants}."""
    return {
        "id": entry.id,
        "n": entry.params.n,
        "q": entry.params.q,
        "k": entry.params.k,
        "branch": entry.branch,
        "constants": dict(entry.constants),
    }


def entry_from_json(data: dict) -> ExactSolutionEntry:
    """Rebuild an entry from :func:`entry_to_json` output."""
    try:
        entry_id = data["id"]
        n = data["n"]
        k = data["k"]
        branch = data.get("branch", 1)
        constants = dict(data.get("constants", {}))
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed entry description: {exc}") from exc
    kwargs = dict(k=k, branch=branch)
    if entry_id == "NONSIM1_CUTOFF":
        kwargs.update(alpha=constants.get("alpha"), beta=constants.get("beta"))
    elif entry_id in ("TWODIM_USOL2", "TWODIM_USOL2_CUTOFF"):
        kwargs.update(nu=2.0 - float(n), c=constants.get("c", 0.0))
    elif entry_id == "USOL2_CUTOFF":
        kwargs.update(n=n)
    elif entry_id == "USOL1":
        kwargs.update(n=n, q=data.get("q"), c=constants.get("c", 0.0))
    else:
        kwargs.update(n=n, c=constants.get("c", 0.0))
    return make_entry(entry_id, **kwargs)
