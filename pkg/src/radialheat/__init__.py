"""Exact solutions, closure pairs, and simulation for the radial
semilinear heat equation

    u_t = u_rr + (n - 1)/r * u_r + k * sgn(u)|u|**(q+1).

The package bundles a verified catalog of closed-form solutions, the
first-order closure pairs that generate them, a balance/ansatz toolkit
for power-law profiles, a reconstruction integrator, a method-of-lines
simulator with blow-up detection, and integral diagnostics with
closed-form cross-checks.  See the ``radialheat`` console script for the
command-line surface.
"""

from .backend import BACKEND_NAME, available_backends, get_kernel
from .catalog import (ENTRY_IDS, ExactSolutionEntry, canonical_entry,
                      default_window, entry_from_json, entry_to_json,
                      eval_exact, make_entry)
from .diagnostics import (DiagnosticsReport, closed_form_reference,
                          diagnostics_report, energy_flux_check,
                          fit_decay_exponent)
from .errors import (ConfigurationError, ConsistencyError, DomainError,
                     NumericError, RadialHeatError)
from .foliation import (GH_IDS, AnsatzTerm, BalanceCase, GHJet, GHPair,
                        PowerAnsatz, ReconstructedField, canonical_gh_params,
                        catalog_GH, default_gh_window, enumerate_balances,
                        expand_ansatz, reconstruct, resolving_residuals,
                        resolving_scale, similarity_defect, sys1_residual,
                        sys2_residual, sys2_constant_solutions)
from .jets import Jet2, SimilarityProfileJet
from .params import Parameters, make_parameters, signed_power
from .quadrature import integrate, richardson_limit
from .residuals import (SIMILARITY_VARIANTS, pde_residual, residual_scale,
                        similarity_ode_residual)
from .simulator import (BoundaryMode, ConvergenceReport, RadialField,
                        SimConfig, Trajectory, convergence_order,
                        discrete_energy, field_from_entry, run, stable_dt,
                        step)
from .special import SpecialValue, gamma_fn, hyp2f1

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "RadialHeatError", "ConfigurationError", "DomainError", "NumericError",
    "ConsistencyError",
    # model
    "Parameters", "make_parameters", "signed_power", "Jet2",
    "SimilarityProfileJet", "ExactSolutionEntry", "ENTRY_IDS", "make_entry",
    "canonical_entry", "default_window", "eval_exact", "entry_to_json",
    "entry_from_json", "pde_residual", "residual_scale",
    "similarity_ode_residual", "SIMILARITY_VARIANTS",
    # foliation
    "GHJet", "GHPair", "GH_IDS", "catalog_GH", "canonical_gh_params",
    "default_gh_window", "resolving_residuals", "resolving_scale",
    "similarity_defect",
    "AnsatzTerm", "PowerAnsatz", "expand_ansatz", "BalanceCase",
    "enumerate_balances", "sys1_residual", "sys2_residual",
    "sys2_constant_solutions", "reconstruct", "ReconstructedField",
    # simulator
    "RadialField", "BoundaryMode", "SimConfig", "Trajectory",
    "ConvergenceReport", "field_from_entry", "stable_dt", "step", "run",
    "convergence_order", "discrete_energy",
    # diagnostics
    "DiagnosticsReport", "SpecialValue", "gamma_fn", "hyp2f1",
    "diagnostics_report", "closed_form_reference", "fit_decay_exponent",
    "energy_flux_check", "integrate", "richardson_limit",
    # backend
    "BACKEND_NAME", "available_backends", "get_kernel",
]
