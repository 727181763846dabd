"""Acceptance criteria for the steady-state solver, currents and rectification tools.

Each check logs one PASS/FAIL line through ``record_criterion``; the lines
are repeated in the pytest terminal summary. Tolerances are fixed here and
are not tuned to make a check pass.
"""

import itertools
import math
import resource
import time

import numpy as np
import pytest

from xxzrect.analysis import ndr_scan, run_pair, solve_currents
from xxzrect.lindblad import liouvillian_for
from xxzrect.model import make_config
from xxzrect.oracle_n3 import OracleParams, energy_current_exact, spin_current_exact
from xxzrect.steady import solve_steady, spectral_check

ORACLE_GRID = {
    "f": (-1.0, -0.5, -0.1, -0.01, 0.01, 0.1, 0.5, 1.0),
    "alpha": (0.5, 1.0),
    "Delta": (0.0, 0.5, 1.0, 1.5, 2.0),
    "delta": (0.0, 0.1, 0.25, 0.7),
    "B": (0.0, 0.1, 0.5),
}
ORACLE_REL = 1e-8
ORACLE_ABS = 1e-10
ORACLE_SMALL = 1e-6

SYMMETRY_TOL = 1e-9
XX_RECTIFICATION_MAX = 1e-6
SYMMETRY_SIZES = (3, 4, 5, 6)
DRAWS = 5

RESIDUAL_MAX = 1e-9
TRACE_MAX = 1e-12
HERMITICITY_MAX = 1e-10
MIN_EIGENVALUE = -1e-9
SPREAD_REL = 1e-9

ZERO_EIGENVALUE = 1e-10
SPECTRAL_CONFIGS = 10

SPIN_RECTIFICATION_MAX = 1e-6
NDR_GRID = np.round(np.arange(1, 21) * 0.05, 10)

LINEAR_RESPONSE_F = 1e-3
LINEAR_RESPONSE_COEFF = 0.1 * 912 / 1017
LINEAR_RESPONSE_REL = 1e-3

SOLVE_SECONDS_MAX = 60.0
MEMORY_BYTES_MAX = 2 * 1024**3
SOLVER_AGREEMENT = 1e-9


def _run(config):
    result, report = solve_currents(config)
    return {"config": config, "result": result, "report": report}


def _draw(rng, N):
    return {
        "N": N,
        "alpha": rng.uniform(0.5, 1.5),
        "Delta": rng.uniform(0.0, 2.0),
        "delta": rng.uniform(0.05, 0.4),
        "B": rng.uniform(0.05, 0.5) * rng.choice((-1.0, 1.0)),
        "f": rng.uniform(0.1, 1.0) * rng.choice((-1.0, 1.0)),
    }


@pytest.fixture(scope="session")
def oracle_runs():
    runs = []
    keys = ("f", "alpha", "Delta", "delta", "B")
    for f, alpha, Delta, delta, B in itertools.product(*(ORACLE_GRID[k] for k in keys)):
        run = _run(make_config(3, alpha=alpha, Delta=Delta, delta=delta, B=B, f=f, profile="z_graded"))
        p = OracleParams(f, alpha, Delta, delta, B)
        run["J_exact"] = spin_current_exact(p)
        run["F_exact"] = energy_current_exact(p)
        runs.append(run)
    return runs


@pytest.fixture(scope="session")
def symmetry_runs():
    """Four families of solves over N = 3..6, five seeded draws each."""
    rng = np.random.default_rng(20240611)
    cases = {"homogeneous_zero_field": [], "homogeneous_field": [], "z_graded_zero_field": [], "xx_limit": []}
    for N in SYMMETRY_SIZES:
        for _ in range(DRAWS):
            p = _draw(rng, N)
            base = dict(alpha=p["alpha"], Delta=p["Delta"], f=p["f"])
            cases["homogeneous_zero_field"].append(_run(make_config(N, B=0.0, profile="uniform", **base)))
            cases["homogeneous_field"].append(_run(make_config(N, B=p["B"], profile="uniform", **base)))
            graded = make_config(N, alpha=p["alpha"], Delta=p["Delta"], delta=p["delta"], B=0.0, f=p["f"],
                                 profile="z_graded")
            cases["z_graded_zero_field"].append((_run(graded), _run(graded.with_drive(-p["f"]))))
            cases["xx_limit"].append(run_pair(make_config(N, alpha=p["alpha"], Delta=0.0, delta=0.0, B=p["B"],
                                                          f=p["f"])))
    return cases


def test_oracle_equivalence(oracle_runs, record_criterion):
    worst = 0.0
    failures = 0
    for run in oracle_runs:
        rep = run["report"]
        for numeric, exact in ((rep.J_mean, run["J_exact"]), (rep.F_mean, run["F_exact"])):
            err = abs(numeric - exact)
            allowed = ORACLE_ABS if abs(exact) < ORACLE_SMALL else ORACLE_REL * abs(exact)
            worst = max(worst, err / allowed)
            failures += err > allowed
    record_criterion("oracle equivalence, N=3 grid", failures == 0 and len(oracle_runs) == 960,
                     f"{len(oracle_runs)} points, {failures} outside tolerance, worst error/allowed {worst:.2e}")


def test_homogeneous_zero_field_carries_no_energy(symmetry_runs, record_criterion):
    worst = max(abs(run["report"].F_mean) for run in symmetry_runs["homogeneous_zero_field"])
    record_criterion("homogeneous chain, B=0: |F| vanishes", worst < SYMMETRY_TOL, f"max |F| = {worst:.2e}")


def test_homogeneous_field_energy_is_field_times_spin(symmetry_runs, record_criterion):
    worst = max(abs(run["report"].F_mean - run["config"].fields[0] * run["report"].J_mean)
                for run in symmetry_runs["homogeneous_field"])
    record_criterion("homogeneous chain, uniform B: F = B J", worst < SYMMETRY_TOL, f"max |F - BJ| = {worst:.2e}")


def test_z_graded_zero_field_parity(symmetry_runs, record_criterion):
    worst_F = worst_J = 0.0
    for fwd, rev in symmetry_runs["z_graded_zero_field"]:
        worst_F = max(worst_F, abs(fwd["report"].F_mean - rev["report"].F_mean))
        worst_J = max(worst_J, abs(fwd["report"].J_mean + rev["report"].J_mean))
    record_criterion("z-graded chain, B=0: F even and J odd in f",
                     worst_F < SYMMETRY_TOL and worst_J < SYMMETRY_TOL,
                     f"max |F(f)-F(-f)| = {worst_F:.2e}, max |J(f)+J(-f)| = {worst_J:.2e}")


def test_xx_limit_does_not_rectify(symmetry_runs, record_criterion):
    values = [rec.R_E for rec in symmetry_runs["xx_limit"]]
    worst = max(values)
    record_criterion("XX limit: no energy rectification", worst < XX_RECTIFICATION_MAX, f"max R_E = {worst:.2e}")


def _all_runs(oracle_runs, symmetry_runs):
    runs = [(r["result"], r["report"]) for r in oracle_runs]
    runs += [(r["result"], r["report"]) for key in ("homogeneous_zero_field", "homogeneous_field")
             for r in symmetry_runs[key]]
    runs += [(r["result"], r["report"]) for pair in symmetry_runs["z_graded_zero_field"] for r in pair]
    for rec in symmetry_runs["xx_limit"]:
        runs += [(rec.steady_fwd, rec.report_fwd), (rec.steady_rev, rec.report_rev)]
    return runs


def test_steady_state_validity(oracle_runs, symmetry_runs, record_criterion):
    runs = _all_runs(oracle_runs, symmetry_runs)
    worst = {"residual": 0.0, "trace": 0.0, "hermiticity": 0.0, "min_eig": math.inf, "spread": 0.0}
    bad = 0
    for result, report in runs:
        worst["residual"] = max(worst["residual"], result.residual)
        worst["trace"] = max(worst["trace"], result.trace_defect)
        worst["hermiticity"] = max(worst["hermiticity"], result.hermiticity_defect)
        worst["min_eig"] = min(worst["min_eig"], result.min_eigenvalue)
        spread = max(report.J_spread / max(1.0, abs(report.J_mean)),
                     report.F_spread / max(1.0, abs(report.F_mean)))
        worst["spread"] = max(worst["spread"], spread)
        bad += not (result.residual < RESIDUAL_MAX and result.trace_defect < TRACE_MAX
                    and result.hermiticity_defect < HERMITICITY_MAX and result.min_eigenvalue >= MIN_EIGENVALUE
                    and spread < SPREAD_REL)
    detail = f"{len(runs)} runs, {bad} invalid; " + ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    record_criterion("steady-state validity on all runs", bad == 0, detail)


def test_unique_zero_mode(record_criterion):
    rng = np.random.default_rng(7)
    profiles = ("uniform", "z_graded", "xy_graded", "xxx_graded", "fully_graded")
    outcomes = []
    for i in range(SPECTRAL_CONFIGS):
        N = (2, 3, 4)[i % 3]
        p = _draw(rng, N)
        profile = "uniform" if N == 2 else profiles[i % len(profiles)]
        delta = 0.0 if profile == "uniform" else p["delta"]
        config = make_config(N, alpha=p["alpha"], Delta=p["Delta"], delta=delta, B=p["B"], f=p["f"],
                             profile=profile)
        max_re, zeros = spectral_check(liouvillian_for(config), ZERO_EIGENVALUE)
        outcomes.append((zeros, max_re))
    ok = all(z == 1 and re < 0 for z, re in outcomes)
    record_criterion("single zero Liouvillian eigenvalue, rest decaying", ok,
                     f"zero counts {[z for z, _ in outcomes]}, max Re of the rest {max(r for _, r in outcomes):.2e}")


def _rectification_ok(rec):
    return math.isfinite(rec.R_E) and rec.R_E != 0.0


@pytest.mark.parametrize("N", SYMMETRY_SIZES)
@pytest.mark.parametrize("Delta", (0.5, 1.5))
@pytest.mark.parametrize("delta", (0.1, 0.25))
def test_energy_rectification_across_sizes(N, Delta, delta, record_criterion):
    rec = run_pair(make_config(N, alpha=1.0, Delta=Delta, delta=delta, B=0.1, f=1.0))
    record_criterion(f"energy rectification N={N} Delta={Delta} delta={delta}", _rectification_ok(rec),
                     f"R_E = {rec.R_E:.6g}")


@pytest.mark.slow
@pytest.mark.parametrize("N", (7, 8))
@pytest.mark.parametrize("Delta", (0.5, 1.5))
@pytest.mark.parametrize("delta", (0.1, 0.25))
def test_energy_rectification_large_chains(N, Delta, delta, record_criterion):
    method = "sparse_lu" if N == 7 else "krylov"
    rec = run_pair(make_config(N, alpha=1.0, Delta=Delta, delta=delta, B=0.1, f=1.0), method=method)
    record_criterion(f"(optional) energy rectification N={N} Delta={Delta} delta={delta}", _rectification_ok(rec),
                     f"R_E = {rec.R_E:.6g}")


@pytest.mark.parametrize("profile", ("xy_graded", "xxx_graded", "fully_graded"))
def test_graded_couplings_rectify_energy_only(profile, record_criterion):
    rec = run_pair(make_config(3, alpha=1.0, Delta=1.0, delta=0.25, B=0.1, f=0.1, profile=profile))
    ok = rec.R_spin < SPIN_RECTIFICATION_MAX and rec.R_E > 0
    record_criterion(f"{profile}: spin current unrectified, energy rectified", ok,
                     f"R_spin = {rec.R_spin:.2e}, R_E = {rec.R_E:.6g}")


def test_twisted_boundary_rectifies_spin(record_criterion):
    rec = run_pair(make_config(3, alpha=1.0, Delta=1.0, delta=0.25, B=0.1, boundary="twisted_xy", kappa=0.25))
    ok = math.isfinite(rec.R_spin) and rec.R_spin > SPIN_RECTIFICATION_MAX
    record_criterion("twisted XY baths: spin current rectified", ok, f"R_spin = {rec.R_spin:.6g}")


@pytest.mark.parametrize("Delta,delta", ((1.0, 0.7), (2.0, 0.8)))
def test_negative_differential_resistance(Delta, delta, record_criterion):
    intervals, F = ndr_scan(make_config(3, alpha=1.0, Delta=Delta, delta=delta, B=0.1), NDR_GRID)
    slopes = np.diff(F) / np.diff(NDR_GRID)
    record_criterion(f"NDR window Delta={Delta} delta={delta}", len(intervals) > 0,
                     f"intervals {intervals}, min slope dF/df = {slopes.min():.4g}")


def test_linear_response_coefficient(record_criterion):
    _, report = solve_currents(make_config(3, alpha=1.0, Delta=1.0, delta=0.0, B=0.1, f=LINEAR_RESPONSE_F))
    ratio = report.F_mean / LINEAR_RESPONSE_F
    rel = abs(ratio - LINEAR_RESPONSE_COEFF) / LINEAR_RESPONSE_COEFF
    record_criterion("linear-response coefficient F/f", rel < LINEAR_RESPONSE_REL,
                     f"F/f = {ratio:.8g}, target {LINEAR_RESPONSE_COEFF:.8g}, rel {rel:.2e}")


def test_six_site_performance(record_criterion):
    config = make_config(6, alpha=1.0, Delta=0.5, delta=0.25, B=0.1, f=1.0)
    start = time.perf_counter()
    result = solve_steady(liouvillian_for(config))
    elapsed = time.perf_counter() - start
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024  # kilobytes on Linux
    ok = elapsed < SOLVE_SECONDS_MAX and peak < MEMORY_BYTES_MAX and result.is_valid()
    record_criterion("N=6 solve time and memory", ok, f"{elapsed:.3f} s, peak RSS {peak / 1024**2:.0f} MiB")


def test_dense_and_sparse_agree(record_criterion):
    rng = np.random.default_rng(11)
    worst = 0.0
    for N in (2, 3, 4, 5):
        p = _draw(rng, N)
        config = make_config(N, alpha=p["alpha"], Delta=p["Delta"], delta=0.0 if N == 2 else p["delta"],
                             B=p["B"], f=p["f"])
        M = liouvillian_for(config)
        dense = solve_steady(M, "dense_lu").rho
        sparse = solve_steady(M, "sparse_lu").rho
        worst = max(worst, float(np.max(np.abs(dense - sparse))))
    record_criterion("dense and sparse solvers agree, N=2..5", worst < SOLVER_AGREEMENT,
                     f"max entry difference {worst:.2e}")
