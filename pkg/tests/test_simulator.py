"""Method-of-lines simulator: accuracy, stability, blow-up, invariants."""

import math

import numpy as np
import pytest

from radialheat import (BoundaryMode, ConfigurationError, RadialField,
                        SimConfig, canonical_entry, convergence_order,
                        discrete_energy, field_from_entry, make_entry,
                        make_parameters, run, stable_dt, step)


def _entry_config(entry, J, t_end, r_min=0.5, r_max=5.0, **kw):
    return SimConfig(params=entry.params, r_min=r_min, r_max=r_max, J=J,
                     t_end=t_end,
                     boundary=BoundaryMode("DIRICHLET_EXACT", entry), **kw)


def test_stable_dt_formula():
    e = canonical_entry("USOL6")
    cfg = _entry_config(e, J=128, t_end=1.0)
    dr = cfg.dr
    expected = 0.4 * dr * dr / (1.0 + (e.params.n - 1.0) * dr / (2.0 * 0.5))
    assert math.isclose(stable_dt(cfg), expected, rel_tol=1e-15)


def test_one_step_error_is_second_order_in_space():
    e = canonical_entry("USOL6")
    errs = {}
    for J in (128, 256):
        cfg = _entry_config(e, J=J, t_end=1.0)
        f0 = field_from_entry(e, 0.0, 0.5, 5.0, J)
        f1 = step(cfg, f0, 1e-5)
        exact = np.array([e.evaluate(1e-5, r).u for r in f1.grid()])
        errs[J] = float(np.max(np.abs(f1.values - exact)))
    assert errs[128] < 1e-5
    assert 0.15 <= errs[256] / errs[128] <= 0.40


def test_run_tracks_exact_solution():
    e = canonical_entry("USOL6")
    cfg = _entry_config(e, J=128, t_end=0.25)
    traj = run(cfg, field_from_entry(e, 0.0, 0.5, 5.0, 128))
    assert traj.status == "COMPLETED"
    final = traj.final
    exact = np.array([e.evaluate(0.25, r).u for r in final.grid()])
    assert float(np.max(np.abs(final.values - exact))) <= 5e-4


def test_snapshot_times():
    e = canonical_entry("USOL6")
    cfg = _entry_config(e, J=64, t_end=0.2, snapshot_times=(0.05, 0.1, 0.2))
    traj = run(cfg, field_from_entry(e, 0.0, 0.5, 5.0, 64))
    times = [t for t, _ in traj.snapshots]
    assert times == [0.05, 0.1, 0.2]
    for t_snap, fld in traj.snapshots:
        assert fld.t == t_snap
        mid = fld.values[32]
        assert math.isclose(mid, e.evaluate(t_snap, fld.grid()[32]).u,
                            rel_tol=1e-2)


def test_discrete_operator_annihilates_power_profile():
    # u = r**(2-n) with zero coupling: the centered drift and Laplacian
    # cancel exactly on the grid at n = 3, so the state only moves by
    # roundoff
    P = make_parameters(3.0, 2.0, 0.0)
    J = 64
    grid = np.linspace(1.0, 3.0, J + 1)
    init = RadialField(0.0, 1.0, 2.0 / J, 1.0 / grid)
    cfg = SimConfig(params=P, r_min=1.0, r_max=3.0, J=J, t_end=0.3,
                    boundary=BoundaryMode("FROZEN"))
    traj = run(cfg, init)
    assert traj.status == "COMPLETED"
    drift = float(np.max(np.abs(traj.final.values - 1.0 / grid)))
    assert drift <= 1e-13


def test_threshold_blowup_event():
    # wide annulus, frozen ends: the cubic source outruns diffusion and
    # the magnitude threshold trips near the pointwise-growth estimate
    # 1/(2 u0**2) = 0.125
    P = make_parameters(3.0, 2.0, 1.0)
    init = RadialField(0.0, 1.0, 4.0 / 32, 2.0 * np.ones(33))
    cfg = SimConfig(params=P, r_min=1.0, r_max=5.0, J=32, t_end=3.0,
                    boundary=BoundaryMode("FROZEN"), u_max=50.0)
    traj = run(cfg, init)
    assert traj.status == "BLOWUP"
    event = traj.events[-1]
    assert event["type"] == "BLOWUP"
    assert event["reason"] == "THRESHOLD"
    assert 0.1 < event["t_est"] < 0.2


def test_boundary_domain_blowup_reports_last_valid_time():
    # homogeneous solution with time shift -1 leaves its domain at t = 1;
    # the boundary supplier fails there and the estimate lands just below
    e = make_entry("USOL1", n=3.0, q=2.0, k=1.0, c=-1.0)
    cfg = SimConfig(params=e.params, r_min=1.0, r_max=2.0, J=16, t_end=2.0,
                    boundary=BoundaryMode("DIRICHLET_EXACT", e))
    traj = run(cfg, field_from_entry(e, 0.0, 1.0, 2.0, 16))
    assert traj.status == "BLOWUP"
    event = traj.events[-1]
    assert event["reason"] in ("BOUNDARY_DOMAIN", "THRESHOLD", "NONFINITE")
    assert 0.95 <= event["t_est"] <= 1.0


def test_energy_decreases_with_frozen_boundaries():
    e = canonical_entry("USOL6")
    cfg = SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=96, t_end=0.3,
                    boundary=BoundaryMode("FROZEN"),
                    snapshot_times=(0.05, 0.1, 0.2, 0.3))
    traj = run(cfg, field_from_entry(e, 0.0, 0.5, 5.0, 96))
    assert traj.status == "COMPLETED"
    energies = [discrete_energy(e.params, fld) for _, fld in traj.snapshots]
    for earlier, later in zip(energies, energies[1:]):
        assert later <= earlier + 1e-10


def test_nonnegativity_preserved_for_damping_source():
    # k < 0 with nonnegative data: the discrete flow should not produce
    # negative values beyond roundoff
    e = canonical_entry("USOL6")
    cfg = SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=96, t_end=0.3,
                    boundary=BoundaryMode("FROZEN"))
    traj = run(cfg, field_from_entry(e, 0.0, 0.5, 5.0, 96))
    assert traj.status == "COMPLETED"
    assert float(np.min(traj.final.values)) >= -1e-10


def test_convergence_order_second():
    e = canonical_entry("USOL6")
    cfg = _entry_config(e, J=32, t_end=0.1)
    report = convergence_order(cfg, e, refinements=(32, 64, 128))
    assert report.order is not None
    assert 1.7 <= report.order <= 2.3
    assert all(flag == "OK" for flag in report.flags)
    data = report.to_json()
    assert data["resolutions"] == [32, 64, 128]


def test_convergence_flags_spatially_trivial():
    e = make_entry("USOL1", n=3.0, q=2.0, k=-1.0, c=1.0)
    cfg = SimConfig(params=e.params, r_min=1.0, r_max=2.0, J=16, t_end=0.2,
                    boundary=BoundaryMode("DIRICHLET_EXACT", e))
    report = convergence_order(cfg, e, refinements=(16, 32))
    assert all(flag == "SPATIALLY_TRIVIAL" for flag in report.flags)


def test_config_validation():
    e = canonical_entry("USOL6")
    bc = BoundaryMode("DIRICHLET_EXACT", e)
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=64, t_end=1.0,
                  boundary=bc, sigma=0.7)
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.0, r_max=5.0, J=64, t_end=1.0,
                  boundary=bc)
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.5, r_max=0.4, J=64, t_end=1.0,
                  boundary=bc)
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=4, t_end=1.0,
                  boundary=bc)
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=64, t_end=1.0,
                  boundary=bc, snapshot_times=(0.5, 0.2))
    with pytest.raises(ConfigurationError):
        SimConfig(params=e.params, r_min=0.5, r_max=5.0, J=64, t_end=1.0,
                  boundary=bc, snapshot_times=(0.5, 2.0))
    with pytest.raises(ConfigurationError):
        BoundaryMode("DIRICHLET_EXACT")
    with pytest.raises(ConfigurationError):
        BoundaryMode("PERIODIC")


def test_run_requires_matching_grid():
    e = canonical_entry("USOL6")
    cfg = _entry_config(e, J=64, t_end=0.1)
    wrong = field_from_entry(e, 0.0, 0.5, 5.0, 32)
    with pytest.raises(ConfigurationError):
        run(cfg, wrong)


def test_field_from_entry_shape():
    e = canonical_entry("USOL6")
    fld = field_from_entry(e, 0.2, 0.5, 5.0, 40)
    assert fld.J == 40
    assert fld.values.shape == (41,)
    assert math.isclose(fld.r_max, 5.0, rel_tol=1e-15)
    grid = fld.grid()
    assert math.isclose(grid[-1], 5.0, rel_tol=1e-12)
    assert math.isclose(fld.values[0], e.evaluate(0.2, 0.5).u, rel_tol=1e-15)
