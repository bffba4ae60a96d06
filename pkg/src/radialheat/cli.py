"""Command-line interface.

Subcommands::

    verify-catalog    scaled residual sweep of the exact-solution catalog
    verify-foliation  closure-pair residuals and non-similarity defect
    balances          source-balance enumeration for power profiles
    simulate          method-of-lines run on an annulus
    reconstruct       integrate a closure pair back to a space-time field
    diagnose          integral diagnostics / closed-form cross-checks
    sweep             parameter sweep of simulate jobs via a worker pool

Exit codes: 0 on success, 1 when a verification or tolerance check fails,
2 on configuration or usage errors.  ``--dry-run`` prints the planned work
as JSON and exits without side effects.

File outputs (written under ``--out``): ``residuals.csv``,
``snapshots.csv``, ``events.jsonl``, ``report.json``, ``summary.txt``.
Floats in CSV files are rendered with repr-exact ``%.17g`` so repeated
runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from multiprocessing import Pool

from . import catalog as _catalog
from .backend import BACKEND_NAME
from .catalog import (ENTRY_IDS, canonical_entry, default_window, entry_to_json,
                      make_entry)
from .diagnostics import (closed_form_reference, diagnostics_report,
                          energy_flux_check, fit_decay_exponent)
from .errors import ConfigurationError, DomainError, RadialHeatError
from .foliation import (GH_IDS, canonical_gh_params, catalog_GH,
                        default_gh_window, enumerate_balances, reconstruct,
                        resolving_residuals, resolving_scale, similarity_defect)
from .params import make_parameters
from .residuals import pde_residual, residual_scale
from .simulator import BoundaryMode, SimConfig, field_from_entry, run

__all__ = ["main"]

_DEFECT_SEED = 20240817


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    """repr-exact float rendering for byte-stable CSV output."""
    return "%.17g" % (float(x),)


def _write_csv(path: str, header: list, rows: list) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(cell if isinstance(cell, str) else _fmt(cell)
                              for cell in row) + "\n")


def _write_jsonl(path: str, records: list) -> None:
    with open(path, "w", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _write_report(out_dir: str, report: dict) -> None:
    with open(os.path.join(out_dir, "report.json"), "w", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_summary(out_dir: str, lines: list) -> None:
    with open(os.path.join(out_dir, "summary.txt"), "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _emit_plan(plan: dict) -> int:
    print(json.dumps(plan, indent=2, sort_keys=True))
    return 0


def _grid(lo: float, hi: float, count: int) -> list:
    if count < 2:
        return [0.5 * (lo + hi)]
    # endpoint-exact interpolation: never overshoots hi by roundoff
    return [lo * (1.0 - i / (count - 1.0)) + hi * (i / (count - 1.0))
            for i in range(count)]


# ---------------------------------------------------------------------------
# entry construction from CLI flags
# ---------------------------------------------------------------------------

_ENTRY_OPTS = ("n", "q", "k", "nu", "c", "alpha", "beta", "branch")


def _add_entry_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=float, help="space dimension")
    parser.add_argument("--q", type=float, help="source exponent (power is q+1)")
    parser.add_argument("--k", type=float, help="source coupling")
    parser.add_argument("--nu", type=float, help="planar-family exponent (n = 2 - nu)")
    parser.add_argument("--c", type=float, help="time-shift constant")
    parser.add_argument("--alpha", type=float, help="outer front constant")
    parser.add_argument("--beta", type=float, help="inner front constant")
    parser.add_argument("--branch", type=int, choices=(1, -1), help="sign branch")


def _entry_from_args(args: argparse.Namespace):
    entry_id = args.entry
    if entry_id not in ENTRY_IDS:
        raise ConfigurationError(f"unknown entry id {entry_id!r}")
    kwargs = dict(_catalog._CANONICAL_ARGS[entry_id])
    for name in _ENTRY_OPTS:
        value = getattr(args, name, None)
        if value is not None:
            kwargs[name] = value
    return make_entry(entry_id, **kwargs)


def _parse_floats(value, what: str) -> list:
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    try:
        return [float(tok) for tok in value.split(",") if tok.strip() != ""]
    except (AttributeError, ValueError) as exc:
        raise ConfigurationError(f"bad {what} list {value!r}") from exc


# ---------------------------------------------------------------------------
# verify-catalog
# ---------------------------------------------------------------------------

def _cmd_verify_catalog(args: argparse.Namespace) -> int:
    entry_ids = args.entries or list(ENTRY_IDS)
    for eid in entry_ids:
        if eid not in ENTRY_IDS:
            raise ConfigurationError(f"unknown entry id {eid!r}")
    if args.dry_run:
        return _emit_plan({"command": "verify-catalog", "entries": entry_ids,
                           "grid": args.grid, "tolerance": args.tolerance,
                           "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    rows = []
    per_entry = {}
    failures = []
    for eid in entry_ids:
        entry = canonical_entry(eid)
        t_lo, t_hi, r_lo, r_hi = default_window(eid)
        worst = 0.0
        for t in _grid(t_lo, t_hi, args.grid):
            for r in _grid(r_lo, r_hi, args.grid):
                jet = entry.evaluate(t, r)
                res = pde_residual(entry.params, jet, r)
                scaled = abs(res) / residual_scale(entry.params, jet)
                worst = max(worst, scaled)
                rows.append((eid, t, r, jet.u, res, scaled))
        per_entry[eid] = worst
        if worst > args.tolerance:
            failures.append(eid)
    _write_csv(os.path.join(args.out, "residuals.csv"),
               ["entry", "t", "r", "u", "residual", "scaled"], rows)
    report = {"command": "verify-catalog", "tolerance": args.tolerance,
              "grid": args.grid, "max_scaled_residual": per_entry,
              "failures": failures, "passed": not failures}
    _write_report(args.out, report)
    lines = [f"verify-catalog: {len(entry_ids)} entries, {args.grid}x{args.grid} grid"]
    for eid in entry_ids:
        status = "FAIL" if eid in failures else "ok"
        lines.append(f"  {eid:22s} max scaled residual {per_entry[eid]:.3e}  [{status}]")
    lines.append("PASSED" if not failures else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# verify-foliation
# ---------------------------------------------------------------------------

def _cmd_verify_foliation(args: argparse.Namespace) -> int:
    pair_ids = args.pairs or list(GH_IDS)
    for pid in pair_ids:
        if pid not in GH_IDS:
            raise ConfigurationError(f"unknown closure pair {pid!r}")
    if args.dry_run:
        return _emit_plan({"command": "verify-foliation", "pairs": pair_ids,
                           "grid": args.grid, "tolerance": args.tolerance,
                           "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    rows = []
    report_pairs = {}
    failures = []
    multi = len(pair_ids) > 1
    for pid in pair_ids:
        params = canonical_gh_params(pid)
        pair = catalog_GH(pid, params=params, branch=args.pair_branch)
        x_lo, x_hi, v_lo, v_hi = default_gh_window(pid)
        worst = 0.0
        for x in _grid(x_lo, x_hi, args.grid):
            for v in _grid(v_lo, v_hi, args.grid):
                gh = pair.jet(x, v)
                r1, r2 = resolving_residuals(params, x, v, gh)
                scale = resolving_scale(params, v, gh)
                scaled = max(abs(r1), abs(r2)) / scale
                worst = max(worst, scaled)
                defect = similarity_defect(params, x, v, gh.G, gh.H)
                row = (x, v, r1, r2, defect)
                rows.append((pid,) + row if multi else row)
        rng = random.Random(_DEFECT_SEED)
        hits = 0
        for _ in range(100):
            x = rng.uniform(x_lo, x_hi)
            v = rng.uniform(v_lo, v_hi)
            gh = pair.jet(x, v)
            if abs(similarity_defect(params, x, v, gh.G, gh.H)) > 1e-6:
                hits += 1
        ok = worst <= args.tolerance and hits >= 99
        report_pairs[pid] = {"max_scaled_residual": worst,
                             "defect_hits": hits, "passed": ok}
        if not ok:
            failures.append(pid)
    header = ["x", "v", "R1", "R2", "defect"]
    if multi:
        header = ["pair"] + header
    _write_csv(os.path.join(args.out, "residuals.csv"), header, rows)
    report = {"command": "verify-foliation", "tolerance": args.tolerance,
              "grid": args.grid, "pairs": report_pairs,
              "failures": failures, "passed": not failures}
    _write_report(args.out, report)
    lines = [f"verify-foliation: {len(pair_ids)} pairs, {args.grid}x{args.grid} grid"]
    for pid in pair_ids:
        info = report_pairs[pid]
        status = "ok" if info["passed"] else "FAIL"
        lines.append(f"  {pid:4s} max scaled residual {info['max_scaled_residual']:.3e}"
                     f"  defect {info['defect_hits']}/100  [{status}]")
    lines.append("PASSED" if not failures else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# balances
# ---------------------------------------------------------------------------

def _cmd_balances(args: argparse.Namespace) -> int:
    if args.terms not in (2, 3):
        raise ConfigurationError("--terms must be 2 or 3")
    if args.dry_run:
        return _emit_plan({"command": "balances", "terms": args.terms,
                           "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    cases = enumerate_balances(args.terms)
    report = {"command": "balances", "terms": args.terms,
              "cases": [case.to_json() for case in cases]}
    _write_report(args.out, report)
    lines = [f"balances: {args.terms}-term power profiles, {len(cases)} case(s)"]
    for case in cases:
        lines.append("  " + json.dumps(case.to_json(), sort_keys=True))
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _sim_config_from_args(args: argparse.Namespace, entry) -> SimConfig:
    if args.boundary == "DIRICHLET_EXACT":
        boundary = BoundaryMode("DIRICHLET_EXACT", entry)
    else:
        boundary = BoundaryMode("FROZEN")
    snapshots = tuple(_parse_floats(args.snapshots, "snapshot")) \
        if args.snapshots else None
    return SimConfig(params=entry.params, r_min=args.r_min, r_max=args.r_max,
                     J=args.grid_points, t_end=args.t_end, boundary=boundary,
                     sigma=args.sigma, u_max=args.u_max,
                     snapshot_times=snapshots)


def _run_simulation(args: argparse.Namespace) -> dict:
    """Shared by simulate and sweep: build, run, and summarize one job."""
    entry = _entry_from_args(args)
    config = _sim_config_from_args(args, entry)
    initial = field_from_entry(entry, args.t0, config.r_min, config.r_max, config.J)
    traj = run(config, initial)
    result = {"entry": entry_to_json(entry), "backend": BACKEND_NAME,
              "status": traj.status, "events": list(traj.events),
              "t0": args.t0, "t_end": config.t_end,
              "J": config.J, "r_min": config.r_min, "r_max": config.r_max,
              "sigma": config.sigma, "boundary": args.boundary}
    max_err = None
    if traj.status == "COMPLETED" and args.boundary == "DIRICHLET_EXACT":
        final = traj.final
        errs = []
        for j, r in enumerate(final.grid()):
            try:
                errs.append(abs(final.values[j] - entry.evaluate(final.t, r).u))
            except DomainError:
                pass
        max_err = max(errs) if errs else None
    result["max_error_vs_exact"] = max_err
    snapshot_rows = []
    for t_snap, fld in traj.snapshots:
        for j, r in enumerate(fld.grid()):
            snapshot_rows.append((t_snap, r, fld.values[j]))
    result["_snapshot_rows"] = snapshot_rows
    return result


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.dry_run:
        entry = _entry_from_args(args)
        return _emit_plan({"command": "simulate", "entry": entry_to_json(entry),
                           "grid_points": args.grid_points,
                           "r_min": args.r_min, "r_max": args.r_max,
                           "t0": args.t0, "t_end": args.t_end,
                           "sigma": args.sigma, "boundary": args.boundary,
                           "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    result = _run_simulation(args)
    snapshot_rows = result.pop("_snapshot_rows")
    _write_csv(os.path.join(args.out, "snapshots.csv"), ["t", "r", "u"],
               snapshot_rows)
    _write_jsonl(os.path.join(args.out, "events.jsonl"), result["events"])
    failed = False
    if args.tolerance is not None and result["max_error_vs_exact"] is not None:
        failed = result["max_error_vs_exact"] > args.tolerance
    result["command"] = "simulate"
    result["tolerance"] = args.tolerance
    result["passed"] = not failed
    _write_report(args.out, result)
    lines = [f"simulate: {result['entry']['id']} status {result['status']}"]
    for event in result["events"]:
        lines.append("  " + json.dumps(event, sort_keys=True))
    if result["max_error_vs_exact"] is not None:
        lines.append(f"  max error vs exact: {result['max_error_vs_exact']:.3e}")
    lines.append("PASSED" if not failed else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------

def _cmd_reconstruct(args: argparse.Namespace) -> int:
    if args.pair not in GH_IDS:
        raise ConfigurationError(f"unknown closure pair {args.pair!r}")
    if args.params:
        vals = _parse_floats(args.params, "params")
        if len(vals) != 3:
            raise ConfigurationError("--params needs n,q,k")
        params = make_parameters(*vals)
    else:
        params = canonical_gh_params(args.pair)
    seed = tuple(_parse_floats(args.seed, "seed"))
    if len(seed) != 3:
        raise ConfigurationError("--seed needs t0,r0,u0")
    window = tuple(_parse_floats(args.window, "window"))
    if len(window) != 4:
        raise ConfigurationError("--window needs t_lo,t_hi,r_lo,r_hi")
    if args.dry_run:
        return _emit_plan({"command": "reconstruct", "pair": args.pair,
                           "params": [params.n, params.q, params.k],
                           "branch": args.pair_branch, "seed": list(seed),
                           "window": list(window), "samples": args.samples,
                           "compare_entry": args.compare_entry, "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    pair = catalog_GH(args.pair, params=params, branch=args.pair_branch)
    field = reconstruct(params, pair, seed, window)
    t_lo, t_hi, r_lo, r_hi = window
    rows = []
    max_err = None
    compare = None
    if args.compare_entry:
        compare_args = argparse.Namespace(entry=args.compare_entry,
                                          **{k: getattr(args, k, None)
                                             for k in _ENTRY_OPTS})
        compare = _entry_from_args(compare_args)
    errs = []
    for t in _grid(t_lo, t_hi, args.samples):
        for r in _grid(r_lo, r_hi, args.samples):
            u = field(t, r)
            row = [t, r, u]
            if compare is not None:
                err = abs(u - compare.evaluate(t, r).u)
                errs.append(err)
                row.append(err)
            rows.append(tuple(row))
    if errs:
        max_err = max(errs)
    header = ["t", "r", "u"] + (["error"] if compare is not None else [])
    _write_csv(os.path.join(args.out, "snapshots.csv"), header, rows)
    failed = (args.tolerance is not None and max_err is not None
              and max_err > args.tolerance)
    report = {"command": "reconstruct", "pair": args.pair,
              "params": {"n": params.n, "q": params.q, "k": params.k},
              "branch": args.pair_branch, "seed": list(seed),
              "window": list(window), "samples": args.samples,
              "max_error_vs_entry": max_err, "tolerance": args.tolerance,
              "passed": not failed}
    _write_report(args.out, report)
    lines = [f"reconstruct: {args.pair} seed {seed}"]
    if max_err is not None:
        lines.append(f"  max error vs {args.compare_entry}: {max_err:.3e}")
    lines.append("PASSED" if not failed else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# diagnose
# ---------------------------------------------------------------------------

_FITTABLE = ("H", "E")


def _cmd_diagnose(args: argparse.Namespace) -> int:
    times = _parse_floats(args.times, "time")
    if not times:
        raise ConfigurationError("--times must list at least one time")
    if args.dry_run:
        entry = _entry_from_args(args)
        return _emit_plan({"command": "diagnose", "entry": entry_to_json(entry),
                           "times": times, "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    entry = _entry_from_args(args)
    reports = []
    closed = []
    flux = []
    for t in times:
        rep = diagnostics_report(entry, t)
        reports.append(rep.to_json())
        for quantity in ("H", "E", "S", "F", "dH_dt", "dE_dt"):
            ref = closed_form_reference(entry, quantity, t)
            if ref is None:
                continue
            measured = getattr(rep, quantity)
            delta = None if measured is None else measured - ref
            closed.append({"t": t, "quantity": quantity, "reference": ref,
                           "measured": measured, "delta": delta})
        flux.append(energy_flux_check(entry, t))
    fits = {}
    if len(times) >= 5:
        for quantity in _FITTABLE:
            values = [rep[quantity] for rep in reports]
            if all(v is not None and v > 0.0 for v in values):
                fits[quantity] = fit_decay_exponent(times, values)
    failed = False
    if args.tolerance is not None:
        for rec in closed:
            if rec["delta"] is None:
                continue
            rel = abs(rec["delta"]) / max(1.0, abs(rec["reference"]))
            if rel > args.tolerance:
                failed = True
    report = {"command": "diagnose", "entry": entry_to_json(entry),
              "times": times, "reports": reports, "closed_form": closed,
              "decay_exponents": fits, "energy_flux": flux,
              "tolerance": args.tolerance, "passed": not failed}
    _write_report(args.out, report)
    lines = [f"diagnose: {entry.id} at {len(times)} time(s)"]
    for rep in reports:
        parts = [f"t={rep['t']:g}"]
        for name in ("H", "E", "S", "F"):
            value = rep[name]
            parts.append(f"{name}={'divergent' if value is None else format(value, '.6g')}")
        lines.append("  " + "  ".join(parts))
    for quantity, slope in fits.items():
        lines.append(f"  decay exponent {quantity}: {slope:.6f}")
    for rec in closed:
        if rec["delta"] is not None:
            lines.append(f"  closed-form {rec['quantity']} at t={rec['t']:g}: "
                         f"delta {rec['delta']:.3e}")
    lines.append("PASSED" if not failed else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

_SWEEP_BASE_DEFAULTS = {
    "entry": "USOL6", "t0": 0.0, "t_end": 0.5, "r_min": 0.5, "r_max": 5.0,
    "grid_points": 64, "sigma": 0.4, "u_max": 1e6,
    "boundary": "DIRICHLET_EXACT", "snapshots": None, "tolerance": None,
}


def _sweep_job(job: dict) -> dict:
    """Worker-pool entry point: run one simulate job described by a dict."""
    ns = argparse.Namespace(**job["args"])
    try:
        result = _run_simulation(ns)
        result.pop("_snapshot_rows", None)
        result["job"] = job["label"]
        result["ok"] = True
        return result
    except Exception as exc:  # worker boundary: report, never kill the pool
        return {"job": job["label"], "ok": False, "error": str(exc)}


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        with open(args.config) as fh:
            sweep_cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read sweep config: {exc}") from exc
    if not isinstance(sweep_cfg, dict) or "vary" not in sweep_cfg:
        raise ConfigurationError("sweep config must be an object with a 'vary' map")
    base = dict(_SWEEP_BASE_DEFAULTS)
    base.update(sweep_cfg.get("base", {}))
    for name in _ENTRY_OPTS:
        base.setdefault(name, None)
    vary = sweep_cfg["vary"]
    if not isinstance(vary, dict) or not vary:
        raise ConfigurationError("'vary' must map field names to value lists")
    for name in vary:
        if name not in base:
            raise ConfigurationError(f"unknown sweep field {name!r}")
    workers = int(sweep_cfg.get("workers", 2))
    if workers < 1:
        raise ConfigurationError("workers must be at least 1")

    fields = sorted(vary)
    combos = [[]]
    for name in fields:
        values = vary[name]
        if not isinstance(values, list) or not values:
            raise ConfigurationError(f"vary field {name!r} needs a nonempty list")
        combos = [prev + [(name, value)] for prev in combos for value in values]
    jobs = []
    for combo in combos:
        job_args = dict(base)
        job_args.update(dict(combo))
        label = ",".join(f"{name}={value}" for name, value in combo)
        jobs.append({"label": label, "args": job_args})

    if args.dry_run:
        return _emit_plan({"command": "sweep", "workers": workers,
                           "jobs": [job["label"] for job in jobs],
                           "out": args.out})
    os.makedirs(args.out, exist_ok=True)
    if workers == 1 or len(jobs) == 1:
        results = [_sweep_job(job) for job in jobs]
    else:
        with Pool(processes=min(workers, len(jobs))) as pool:
            results = pool.map(_sweep_job, jobs)
    events = []
    for res in results:
        for event in res.get("events", []):
            tagged = dict(event)
            tagged["job"] = res["job"]
            events.append(tagged)
    _write_jsonl(os.path.join(args.out, "events.jsonl"), events)
    errored = [res["job"] for res in results if not res["ok"]]
    report = {"command": "sweep", "workers": workers,
              "jobs": results, "errors": errored, "passed": not errored}
    _write_report(args.out, report)
    lines = [f"sweep: {len(jobs)} job(s), {workers} worker(s)"]
    for res in results:
        if res["ok"]:
            lines.append(f"  [{res['job']}] status {res['status']}")
        else:
            lines.append(f"  [{res['job']}] ERROR {res['error']}")
    lines.append("PASSED" if not errored else "FAILED")
    _write_summary(args.out, lines)
    print("\n".join(lines))
    return 0 if not errored else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialheat",
        description="Exact solutions, closure pairs, and simulation for the "
                    "radial semilinear heat equation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_tol=None):
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--dry-run", action="store_true",
                       help="print the plan as JSON and exit")
        p.add_argument("--tolerance", type=float, default=default_tol,
                       help="failure threshold (exit 1 when exceeded)")

    p = sub.add_parser("verify-catalog",
                       help="residual sweep of the exact-solution catalog")
    p.add_argument("--entry", dest="entries", action="append", metavar="ID",
                   help="entry id (repeatable; default: all)")
    p.add_argument("--grid", type=int, default=20, help="grid points per axis")
    common(p, default_tol=1e-9)
    p.set_defaults(func=_cmd_verify_catalog)

    p = sub.add_parser("verify-foliation",
                       help="closure-pair residuals and non-similarity defect")
    p.add_argument("--pair", dest="pairs", action="append", metavar="ID",
                   help="pair id (repeatable; default: all)")
    p.add_argument("--grid", type=int, default=20, help="grid points per axis")
    p.add_argument("--pair-branch", type=int, choices=(1, -1), default=1)
    common(p, default_tol=1e-10)
    p.set_defaults(func=_cmd_verify_foliation)

    p = sub.add_parser("balances", help="source-balance enumeration")
    p.add_argument("--terms", type=int, default=2, help="2 or 3 profile terms")
    common(p)
    p.set_defaults(func=_cmd_balances)

    p = sub.add_parser("simulate", help="method-of-lines run on an annulus")
    p.add_argument("--entry", required=True, help="catalog entry id")
    _add_entry_options(p)
    p.add_argument("--t0", type=float, default=0.0, help="initial time")
    p.add_argument("--t-end", type=float, required=True, dest="t_end")
    p.add_argument("--r-min", type=float, required=True, dest="r_min")
    p.add_argument("--r-max", type=float, required=True, dest="r_max")
    p.add_argument("--grid-points", "-J", type=int, default=128, dest="grid_points",
                   help="number of cells J (J+1 nodes)")
    p.add_argument("--sigma", type=float, default=0.4,
                   help="parabolic stability fraction in (0, 0.5]")
    p.add_argument("--u-max", type=float, default=1e6, dest="u_max",
                   help="blow-up magnitude threshold")
    p.add_argument("--boundary", choices=("DIRICHLET_EXACT", "FROZEN"),
                   default="DIRICHLET_EXACT")
    p.add_argument("--snapshots", help="comma-separated snapshot times")
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reconstruct",
                       help="integrate a closure pair back to a field")
    p.add_argument("--pair", required=True, help="closure pair id")
    p.add_argument("--pair-branch", type=int, choices=(1, -1), default=1)
    p.add_argument("--params", help="n,q,k (default: pair canonical)")
    p.add_argument("--seed", required=True, help="t0,r0,u0 anchor value")
    p.add_argument("--window", required=True, help="t_lo,t_hi,r_lo,r_hi")
    p.add_argument("--samples", type=int, default=5, help="grid points per axis")
    p.add_argument("--compare-entry", dest="compare_entry", metavar="ID",
                   help="catalog entry to compare against")
    _add_entry_options(p)
    common(p)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("diagnose",
                       help="integral diagnostics and closed-form checks")
    p.add_argument("--entry", required=True, help="catalog entry id")
    _add_entry_options(p)
    p.add_argument("--times", required=True, help="comma-separated times")
    common(p)
    p.set_defaults(func=_cmd_diagnose)

    p = sub.add_parser("sweep", help="parameter sweep via a worker pool")
    p.add_argument("--config", required=True, help="sweep description JSON")
    common(p)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except RadialHeatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
