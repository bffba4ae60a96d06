"""Pointwise PDE residual and the two similarity reductions."""

import math

import pytest

from radialheat import (DomainError, Jet2, NumericError, SimilarityProfileJet,
                        make_parameters, pde_residual, residual_scale,
                        similarity_ode_residual)


def test_hand_example():
    # constant field u = 1 with (n, q, k) = (3, 2, 1):
    # residual = 0 - 0 - 0 - 1*1**3 = -1
    P = make_parameters(3.0, 2.0, 1.0)
    jet = Jet2(1.0, 0.0, 0.0, 0.0)
    assert pde_residual(P, jet, 1.0) == -1.0
    assert residual_scale(P, jet) == 2.0


def test_zero_radius_rejected():
    P = make_parameters(3.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        pde_residual(P, Jet2(1.0, 0.0, 0.0, 0.0), 0.0)


def test_source_undefined_at_zero_value():
    P = make_parameters(2.5, -4.0, 1.0)  # power q+1 = -3
    with pytest.raises(DomainError):
        pde_residual(P, Jet2(0.0, 0.0, 0.0, 0.0), 1.0)


def test_nonfinite_jet_rejected():
    P = make_parameters(3.0, 2.0, 1.0)
    with pytest.raises(NumericError):
        pde_residual(P, Jet2(math.inf, 0.0, 0.0, 0.0), 1.0)


def _rational_profiles(s):
    """Profiles of u = 5(3t + r^2)/(r (15t + r^2) s) in both reductions."""

    def V(x):  # u = r**p V(t/r**2)
        return SimilarityProfileJet(5 * (3 * x + 1) / (s * (15 * x + 1)),
                                    -60 / (s * (15 * x + 1) ** 2),
                                    1800 / (s * (15 * x + 1) ** 3))

    def U(xi):  # u = t**(p/2) U(r/sqrt(t))
        N, D = 3 + xi * xi, 15 * xi + xi**3
        Np, Dp = 2 * xi, 15 + 3 * xi * xi
        Npp, Dpp = 2.0, 6 * xi
        return SimilarityProfileJet(
            (5 / s) * N / D,
            (5 / s) * (Np * D - N * Dp) / D**2,
            (5 / s) * ((Npp * D - N * Dpp) * D - 2 * Dp * (Np * D - N * Dp)) / D**3)

    return V, U


def test_x_form_annihilates_rational_profile():
    P = make_parameters(2.5, 2.0, -1.0)
    V, _ = _rational_profiles(math.sqrt(2.0))
    for x in (0.2, 0.9, 3.0):
        assert abs(similarity_ode_residual(P, "X_FORM", x, V(x))) < 1e-12


def test_xi_form_annihilates_rational_profile():
    P = make_parameters(2.5, 2.0, -1.0)
    _, U = _rational_profiles(math.sqrt(2.0))
    for xi in (0.8, 2.0, 4.5):
        assert abs(similarity_ode_residual(P, "XI_FORM", xi, U(xi))) < 1e-12


def test_x_form_annihilates_homogeneous_profile():
    # u = (2t)**(-1/2) means V(x) = (2x)**(-1/2) for (n, q, k) = (3, 2, -1)
    P = make_parameters(3.0, 2.0, -1.0)
    for x in (0.3, 0.7):
        prof = SimilarityProfileJet((2 * x) ** -0.5, -((2 * x) ** -1.5),
                                    3 * (2 * x) ** -2.5)
        assert abs(similarity_ode_residual(P, "X_FORM", x, prof)) < 1e-12


def test_xi_form_annihilates_constant_profile():
    P = make_parameters(3.0, 2.0, -1.0)
    prof = SimilarityProfileJet(2.0 ** -0.5, 0.0, 0.0)
    assert abs(similarity_ode_residual(P, "XI_FORM", 1.3, prof)) < 1e-15


def test_xi_form_rejects_zero_point():
    P = make_parameters(3.0, 2.0, -1.0)
    with pytest.raises(DomainError):
        similarity_ode_residual(P, "XI_FORM", 0.0,
                                SimilarityProfileJet(1.0, 0.0, 0.0))


def test_unknown_variant_rejected():
    from radialheat import ConfigurationError

    P = make_parameters(3.0, 2.0, -1.0)
    with pytest.raises(ConfigurationError):
        similarity_ode_residual(P, "Y_FORM", 1.0,
                                SimilarityProfileJet(1.0, 0.0, 0.0))
