"""Closed-form catalog: frozen values, scaling covariance, fronts, JSON."""

import math

import pytest

from radialheat import (ConfigurationError, DomainError, ENTRY_IDS,
                        canonical_entry, default_window, entry_from_json,
                        entry_to_json, eval_exact, make_entry)

REL = 1e-13


def test_entry_id_roster():
    assert set(ENTRY_IDS) == {
        "USOL1", "USOL2", "USOL3", "USOL4", "USOL5", "USOL6",
        "USOL2_CUTOFF", "TWODIM_USOL2", "TWODIM_USOL2_CUTOFF",
        "NONSIM1_CUTOFF",
    }


def test_frozen_rational_jet():
    e = make_entry("USOL6", k=-1.0, c=0.0)
    jet = e.evaluate(0.3, 1.7)
    assert math.isclose(jet.u, 1.0665982252236787, rel_tol=REL)
    assert math.isclose(jet.u_t, -1.32067603481697, rel_tol=REL)
    assert math.isclose(jet.u_r, -0.16128976725499806, rel_tol=REL)
    assert math.isclose(jet.u_rr, 0.035034496862262308, rel_tol=REL)


def test_frozen_point_values():
    e6 = make_entry("USOL6", k=-1.0, c=0.0)
    assert math.isclose(e6.evaluate(0.0, 1.0).u, 5.0 / math.sqrt(2.0), rel_tol=REL)
    e5 = make_entry("USOL5", k=-1.0, c=0.0)
    assert e5.evaluate(1.0, 1.0).u == 0.0  # numerator root t + c = r**2
    e1 = make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=0.0)
    assert math.isclose(e1.evaluate(1.0, 0.7).u, 0.70710678118654752, rel_tol=REL)


def test_homogeneous_entry_is_flat():
    e = make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=0.0)
    jet = e.evaluate(0.5, 1.9)
    assert jet.u_r == 0.0 and jet.u_rr == 0.0
    assert e.spatially_homogeneous


def test_validity_errors():
    e = make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=0.0)
    # -k*q*(t+c) = 2t must be positive
    assert e.validity(-1.0, 1.0) is not None
    with pytest.raises(DomainError):
        e.evaluate(-1.0, 1.0)
    assert e.validity(1.0, 1.0) is None


def test_scaling_covariance():
    """lam**(-p) u(lam**2 t, lam r) == u(t, r) for scale-invariant entries."""
    cases = [
        make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=0.0),
        make_entry("USOL2", n=6.0, k=-1.0, c=0.0),
        make_entry("USOL5", k=-1.0, c=0.0),
        make_entry("USOL6", k=-1.0, c=0.0),
    ]
    for e in cases:
        p = e.params.p
        for lam in (0.5, 2.0, 3.0):
            u_ref = e.evaluate(0.8, 1.1).u
            u_scaled = lam ** (-p) * e.evaluate(lam * lam * 0.8, lam * 1.1).u
            assert math.isclose(u_scaled, u_ref, rel_tol=1e-12), (e.id, lam)


def test_time_shift_orbit():
    """lam**(-p) u_c(lam**2 t, lam r) == u_{c/lam**2}(t, r)."""
    lam = 2.0
    c = 0.7
    e_c = make_entry("USOL5", k=-1.0, c=c)
    e_scaled = make_entry("USOL5", k=-1.0, c=c / lam**2)
    p = e_c.params.p
    for (t, r) in ((0.5, 0.6), (2.0, 0.4)):
        lhs = lam ** (-p) * e_c.evaluate(lam * lam * t, lam * r).u
        rhs = e_scaled.evaluate(t, r).u
        assert math.isclose(lhs, rhs, rel_tol=1e-12)


def test_cutoff_front_continuity():
    e = make_entry("USOL2_CUTOFF", n=6.0, k=-1.0)
    t = 1.0
    lo, hi = e.support(t)
    assert lo == 0.0 and math.isclose(hi, 2.0, rel_tol=REL)  # alpha*sqrt(t)
    assert abs(e.evaluate(t, hi - 1e-8).u) < 1e-12
    assert e.evaluate(t, hi + 1e-8).u == 0.0
    assert e.evaluate(t, hi).u == 0.0


def test_two_front_support_phases():
    e = make_entry("NONSIM1_CUTOFF", k=1.0, alpha=20.0, beta=5.0)
    lo, hi = e.support(2.0)  # before the inner front collapses: annulus
    assert lo > 0.0
    assert math.isclose(lo, math.sqrt(3.0 * (5.0 - 2.0)), rel_tol=REL)
    assert math.isclose(hi, math.sqrt(3.0 * (20.0 - 2.0)), rel_tol=REL)
    lo, hi = e.support(10.0)  # afterwards: full disk
    assert lo == 0.0
    assert math.isclose(hi, math.sqrt(30.0), rel_tol=REL)
    assert e.support(25.0) is None  # extinguished
    # continuity at both fronts
    lo, hi = e.support(2.0)
    assert abs(e.evaluate(2.0, lo + 1e-8).u) < 1e-3  # sqrt front: O(1e-4)
    assert e.evaluate(2.0, lo - 1e-8).u == 0.0
    assert abs(e.evaluate(2.0, hi - 1e-8).u) < 1e-3
    assert e.evaluate(2.0, hi + 1e-8).u == 0.0


def test_planar_cutoff_support():
    e = make_entry("TWODIM_USOL2_CUTOFF", nu=-3.0, k=-1.0, c=0.0)
    lo, hi = e.support(1.0)
    assert lo == 0.0
    assert math.isclose(hi, math.sqrt(abs(2.0 * (-3.0 + 2.0)) * 1.0), rel_tol=REL)
    assert abs(e.evaluate(1.0, hi - 1e-9).u) < 1e-12
    assert e.evaluate(1.0, hi + 1e-9).u == 0.0


def test_jets_match_finite_differences():
    h = 1e-4
    for eid in ("USOL2", "USOL3", "USOL4", "TWODIM_USOL2", "NONSIM1_CUTOFF"):
        e = canonical_entry(eid)
        t_lo, t_hi, r_lo, r_hi = default_window(eid)
        t = 0.5 * (t_lo + t_hi)
        r = 0.5 * (r_lo + r_hi)
        jet = e.evaluate(t, r)
        u_t = (e.evaluate(t + h, r).u - e.evaluate(t - h, r).u) / (2 * h)
        u_r = (e.evaluate(t, r + h).u - e.evaluate(t, r - h).u) / (2 * h)
        u_rr = (e.evaluate(t, r + h).u - 2 * jet.u + e.evaluate(t, r - h).u) / (h * h)
        assert math.isclose(jet.u_t, u_t, rel_tol=1e-6), eid
        assert math.isclose(jet.u_r, u_r, rel_tol=1e-6), eid
        assert math.isclose(jet.u_rr, u_rr, rel_tol=1e-4, abs_tol=1e-8), eid


def test_branch_sign_flip():
    for eid in ("USOL4", "USOL5", "USOL6"):
        plus = canonical_entry(eid)
        minus = make_entry(eid, k=plus.params.k, branch=-1,
                           c=plus.constants.get("c", 0.0))
        t_lo, t_hi, r_lo, r_hi = default_window(eid)
        t, r = 0.5 * (t_lo + t_hi), 0.5 * (r_lo + r_hi)
        assert math.isclose(minus.evaluate(t, r).u, -plus.evaluate(t, r).u,
                            rel_tol=REL), eid


def test_branch_selects_domain_under_square_root():
    # the sign sits inside a square root: the two branches are valid on
    # complementary regions and the field itself stays nonnegative
    plus = make_entry("USOL3", k=1.0, c=-1.0)
    minus = make_entry("USOL3", k=1.0, c=-1.0, branch=-1)
    t, r = 0.5, 1.0  # here 1 + c*(3t + r**2) < 0
    assert minus.evaluate(t, r).u > 0.0
    with pytest.raises(DomainError):
        plus.evaluate(t, r)


def test_branch_on_even_power_is_value_neutral():
    # with n - 2 an even integer both square-root signs give the same field
    plus = make_entry("USOL2", n=6.0, k=-1.0, c=0.0)
    minus = make_entry("USOL2", n=6.0, k=-1.0, c=0.0, branch=-1)
    assert math.isclose(minus.evaluate(0.5, 1.5).u, plus.evaluate(0.5, 1.5).u,
                        rel_tol=REL)


def test_branch_on_odd_power_flips_sign():
    plus = make_entry("USOL2", n=5.0, k=-1.0, c=0.0)
    minus = make_entry("USOL2", n=5.0, k=-1.0, c=0.0, branch=-1)
    assert math.isclose(minus.evaluate(0.5, 1.5).u, -plus.evaluate(0.5, 1.5).u,
                        rel_tol=REL)


def test_canonical_windows_are_in_domain():
    for eid in ENTRY_IDS:
        e = canonical_entry(eid)
        t_lo, t_hi, r_lo, r_hi = default_window(eid)
        for i in range(5):
            for j in range(5):
                t = t_lo + (t_hi - t_lo) * i / 4.0
                r = r_lo + (r_hi - r_lo) * j / 4.0
                e.evaluate(t, r)  # must not raise


def test_json_round_trip():
    for eid in ENTRY_IDS:
        e = canonical_entry(eid)
        e2 = entry_from_json(entry_to_json(e))
        assert e2.id == e.id
        assert e2.branch == e.branch
        assert math.isclose(e2.params.n, e.params.n, rel_tol=REL)
        assert math.isclose(e2.params.q, e.params.q, rel_tol=REL)
        assert e2.params.k == e.params.k
        for key, value in e.constants.items():
            assert math.isclose(e2.constants[key], value, rel_tol=REL), (eid, key)


def test_eval_exact_alias():
    e = canonical_entry("USOL6")
    assert eval_exact(e, 0.3, 1.7) == e.evaluate(0.3, 1.7)


def test_make_entry_validation():
    with pytest.raises(ConfigurationError):
        make_entry("USOL3", k=-1.0)  # needs k > 0
    with pytest.raises(ConfigurationError):
        make_entry("USOL2", n=3.0, k=-1.0)  # n in excluded set
    with pytest.raises(ConfigurationError):
        make_entry("USOL2_CUTOFF", n=3.5, k=-1.0)  # needs n > 4
    with pytest.raises(ConfigurationError):
        make_entry("TWODIM_USOL2", nu=0.0, k=-1.0)
    with pytest.raises(ConfigurationError):
        make_entry("TWODIM_USOL2", nu=3.0, k=1.0)  # amplitude base < 0
    with pytest.raises(ConfigurationError):
        make_entry("TWODIM_USOL2_CUTOFF", nu=-1.5, k=-1.0)  # needs nu < -2
    with pytest.raises(ConfigurationError):
        make_entry("NONSIM1_CUTOFF", k=1.0, alpha=5.0, beta=5.0)
    with pytest.raises(ConfigurationError):
        make_entry("USOL1", n=3.0, q=2.0, k=1.0, branch=-1)  # unbranched
    with pytest.raises(ConfigurationError):
        make_entry("USOL2_CUTOFF", n=6.0, k=-1.0, branch=-1)
    with pytest.raises(ConfigurationError):
        make_entry("NOT_AN_ID", k=1.0)


def test_derived_constants():
    e = make_entry("USOL2_CUTOFF", n=6.0, k=-1.0)
    assert math.isclose(e.constants["alpha"], 2.0, rel_tol=REL)
    assert math.isclose(e.constants["beta"], 1.0 / 9.0, rel_tol=REL)
    e = make_entry("TWODIM_USOL2", nu=3.0, k=-1.0, c=0.0)
    assert math.isclose(e.constants["alpha"], 10.0, rel_tol=REL)
    assert math.isclose(e.constants["beta"], 48.0 ** 1.5, rel_tol=REL)
    e = make_entry("NONSIM1_CUTOFF", k=1.0, alpha=20.0, beta=5.0)
    assert math.isclose(e.constants["gamma"], 1.0 / 45.0, rel_tol=REL)
