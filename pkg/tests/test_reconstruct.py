"""Rebuilding space-time fields from closure pairs."""

import math

import pytest

from radialheat import (ConfigurationError, ConsistencyError, DomainError,
                        GHJet, catalog_GH, make_entry, make_parameters,
                        reconstruct)


def test_source_only_pair_recovers_homogeneous_solution():
    P = make_parameters(3.0, 2.0, -1.0)
    pair = catalog_GH("GH1", params=P)
    u0 = (2.0 * 1.0) ** -0.5  # value of the c = 1 homogeneous solution at t = 0
    field = reconstruct(P, pair, seed=(0.0, 1.0, u0), window=(0.0, 0.5, 0.8, 1.5))
    entry = make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=1.0)
    worst = 0.0
    for i in range(5):
        for j in range(5):
            t = 0.5 * i / 4.0
            r = 0.8 + 0.7 * j / 4.0
            worst = max(worst, abs(field(t, r) - entry.evaluate(t, r).u))
    assert worst <= 1e-6


def test_rational_pair_recovers_rational_solution():
    P = make_parameters(2.5, 2.0, -1.0)
    pair = catalog_GH("GH6", params=P)
    entry = make_entry("USOL6", k=-1.0, c=0.0)
    t0, r0 = 0.2, 1.0
    field = reconstruct(P, pair, seed=(t0, r0, entry.evaluate(t0, r0).u),
                        window=(0.1, 0.5, 0.8, 1.5))
    worst = 0.0
    for i in range(4):
        for j in range(4):
            wt, wr = i / 3.0, j / 3.0
            t = 0.1 * (1.0 - wt) + 0.5 * wt
            r = 0.8 * (1.0 - wr) + 1.5 * wr
            worst = max(worst, abs(field(t, r) - entry.evaluate(t, r).u))
    assert worst <= 1e-6


def test_path_independence_at_corners():
    P = make_parameters(3.0, 2.0, -1.0)
    pair = catalog_GH("GH1", params=P)
    field = reconstruct(P, pair, seed=(0.0, 1.0, 2.0 ** -0.5),
                        window=(0.0, 0.5, 0.8, 1.5))
    for t in (0.0, 0.5):
        for r in (0.8, 1.5):
            d = abs(field._via_r_then_t(t, r) - field._via_t_then_r(t, r))
            assert d <= 1e-7 * (1.0 + abs(field._via_r_then_t(t, r)))


def test_static_pair_gives_power_law_profile():
    # G = 0, H = (2 - n) v with zero coupling freezes u = C r**(2-n)
    n = 3.0
    P = make_parameters(n, 2.0, 0.0)

    def gh(x, v):
        return GHJet(G=0.0, G_x=0.0, G_v=0.0,
                     H=(2.0 - n) * v, H_x=0.0, H_v=(2.0 - n))

    field = reconstruct(P, gh, seed=(0.2, 1.0, 1.0), window=(0.1, 0.6, 0.5, 2.0))
    assert math.isclose(field(0.3, 2.0), 0.5, rel_tol=1e-9)
    assert math.isclose(field(0.5, 0.5), 2.0, rel_tol=1e-9)


def test_inconsistent_pair_is_rejected():
    P = make_parameters(3.0, 2.0, 1.0)

    def gh(x, v):
        return GHJet(G=v, G_x=0.0, G_v=1.0, H=v, H_x=0.0, H_v=1.0)

    with pytest.raises(ConsistencyError):
        reconstruct(P, gh, seed=(0.5, 1.0, 1.0), window=(0.4, 0.6, 0.8, 1.2))


def test_window_gating():
    P = make_parameters(3.0, 2.0, -1.0)
    pair = catalog_GH("GH1", params=P)
    field = reconstruct(P, pair, seed=(0.0, 1.0, 2.0 ** -0.5),
                        window=(0.0, 0.5, 0.8, 1.5))
    with pytest.raises(DomainError):
        field(0.7, 1.0)
    with pytest.raises(DomainError):
        field(0.2, 2.0)


def test_seed_and_window_validation():
    P = make_parameters(3.0, 2.0, -1.0)
    pair = catalog_GH("GH1", params=P)
    with pytest.raises(ConfigurationError):
        reconstruct(P, pair, seed=(2.0, 1.0, 1.0), window=(0.0, 0.5, 0.8, 1.5))
    with pytest.raises(ConfigurationError):
        reconstruct(P, pair, seed=(0.2, 1.0, 1.0), window=(0.0, 0.5, -0.1, 1.5))
    with pytest.raises(ConfigurationError):
        reconstruct(P, "not a pair", seed=(0.2, 1.0, 1.0),
                    window=(0.0, 0.5, 0.8, 1.5))


def test_scaling_orbit_of_reconstruction():
    """Scaling a reconstructed field matches reconstructing scaled data.

    With lam**(-p) u(lam**2 t, lam r) a solution whenever u is, the field
    rebuilt from a scaled seed agrees with the scaled rebuilt field.
    """
    P = make_parameters(3.0, 2.0, -1.0)
    pair = catalog_GH("GH1", params=P)
    lam = 2.0
    p = P.p
    u0 = (2.0 * 1.0) ** -0.5
    base = reconstruct(P, pair, seed=(0.0, 1.0, u0), window=(0.0, 2.0, 0.5, 3.0))
    scaled = reconstruct(P, pair,
                         seed=(0.0, 1.0 / lam, lam ** (-p) * u0),
                         window=(0.0, 0.5, 0.25, 1.5))
    for (t, r) in ((0.1, 0.5), (0.4, 1.2)):
        assert math.isclose(scaled(t, r),
                            lam ** (-p) * base(lam * lam * t, lam * r),
                            rel_tol=1e-8)
