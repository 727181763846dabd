"""Rectification factors, forward/inverted bath pairs, sweeps and NDR scans."""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .lindblad import liouvillian_for
from .observables import current_report
from .steady import solve_steady

SWEEP_AXES = ("f", "delta", "Delta", "alpha", "B", "N", "kappa")
ZERO_FLOW = 1e-12


def rectification_factor(forward, reverse):
    """100 |(F + F_I) / (F - F_I)|.

    Returns ``math.inf`` when the two flows coincide (inversion changes
    nothing) and ``math.nan`` when both flows vanish.
    """
    if abs(forward) < ZERO_FLOW and abs(reverse) < ZERO_FLOW:
        return math.nan
    diff = forward - reverse
    if abs(diff) < ZERO_FLOW * max(1.0, abs(forward) + abs(reverse)):
        return math.inf
    return 100.0 * abs((forward + reverse) / diff)


def solve_currents(config, method="auto"):
    """Steady state of ``config`` and its :class:`CurrentReport`."""
    result = solve_steady(liouvillian_for(config), method)
    return result, current_report(result.rho, config)


@dataclass
class RectificationRecord:
    config_forward: object
    config_reverse: object
    F_fwd: float
    F_rev: float
    J_fwd: float
    J_rev: float
    R_E: float
    R_spin: float
    F_xxz_fwd: float = math.nan
    F_xxz_rev: float = math.nan
    report_fwd: object = None
    report_rev: object = None
    steady_fwd: object = None
    steady_rev: object = None


def run_pair(config, method="auto"):
    """Solve ``config`` and its bath-inverted twin; compare their flows."""
    reverse = config.inverted()
    st_f, rep_f = solve_currents(config, method)
    st_r, rep_r = solve_currents(reverse, method)
    return RectificationRecord(
        config_forward=config,
        config_reverse=reverse,
        F_fwd=rep_f.F_mean,
        F_rev=rep_r.F_mean,
        J_fwd=rep_f.J_mean,
        J_rev=rep_r.J_mean,
        R_E=rectification_factor(rep_f.F_mean, rep_r.F_mean),
        R_spin=rectification_factor(rep_f.J_mean, rep_r.J_mean),
        F_xxz_fwd=rep_f.F_xxz,
        F_xxz_rev=rep_r.F_xxz,
        report_fwd=rep_f,
        report_rev=rep_r,
        steady_fwd=st_f,
        steady_rev=st_r,
    )


def with_axis_value(config, axis, value):
    """Copy of ``config`` with one sweep axis set.

    ``f`` means the antisymmetric drive f_L = f = -f_R. Sweeping ``delta``
    from a uniform chain grades the z coupling.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    if axis == "f":
        return config.with_drive(value)
    if axis == "delta" and config.couplings.kind == "uniform":
        return config.with_params(delta=float(value), profile="z_graded" if value else "uniform")
    key = {"N": "N", "kappa": "kappa", "B": "B", "alpha": "alpha", "Delta": "Delta", "delta": "delta"}[axis]
    return config.with_params(**{key: int(value) if axis == "N" else float(value)})


@dataclass(frozen=True)
class SweepSpec:
    base: object
    axis: str
    grid: tuple
    method: str = "auto"

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}; expected one of {SWEEP_AXES}")
        grid = np.asarray(self.grid, float)
        if grid.size == 0:
            raise ValueError("sweep grid is empty")
        steps = np.diff(grid)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("sweep grid must be strictly monotone")


SWEEP_COLUMNS = ("N", "f", "alpha", "Delta", "delta", "B", "kappa", "J_fwd", "J_rev", "F_fwd", "F_rev",
                 "F_xxz_fwd", "F_xxz_rev", "R_E", "R_spin", "max_residual", "max_spread", "error")


def _sweep_point(args):
    spec, value = args
    row = {"axis": spec.axis, "value": value}
    try:
        config = with_axis_value(spec.base, spec.axis, value)
        flat = config.as_flat()
        row.update({k: flat[k] for k in ("N", "alpha", "Delta", "delta", "B", "kappa")})
        row["f"] = flat["f_L"]
        rec = run_pair(config, spec.method)
        row.update(J_fwd=rec.J_fwd, J_rev=rec.J_rev, F_fwd=rec.F_fwd, F_rev=rec.F_rev,
                   F_xxz_fwd=rec.F_xxz_fwd, F_xxz_rev=rec.F_xxz_rev, R_E=rec.R_E, R_spin=rec.R_spin,
                   max_residual=max(rec.steady_fwd.residual, rec.steady_rev.residual),
                   max_spread=max(rec.report_fwd.J_spread, rec.report_rev.J_spread,
                                  np.nan_to_num(rec.report_fwd.F_spread), np.nan_to_num(rec.report_rev.F_spread)),
                   error="")
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    for col in SWEEP_COLUMNS:
        row.setdefault(col, math.nan)
    return row


def sweep(spec, workers=1):
    """One row per grid point, in grid order; failures are recorded per row."""
    jobs = [(spec, v) for v in spec.grid]
    if workers <= 1:
        return [_sweep_point(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_point, jobs))


def energy_current_curve(config, f_grid, method="auto"):
    """Steady energy current at each antisymmetric drive strength in ``f_grid``."""
    return np.array([solve_currents(config.with_drive(f), method)[1].F_mean for f in f_grid])


def decreasing_intervals(values):
    """Maximal index intervals ``(i, j)`` over which ``values`` strictly decreases."""
    intervals, start = [], None
    for i, step in enumerate(np.diff(values)):
        if step < 0:
            start = i if start is None else start
        elif start is not None:
            intervals.append((start, i))
            start = None
    if start is not None:
        intervals.append((start, len(values) - 1))
    return intervals


def ndr_scan(config, f_grid, method="auto"):
    """Intervals of negative differential resistance of the energy current.

    Returns ``(intervals, currents)``; an empty interval list means no NDR
    was seen at this grid resolution.
    """
    if config.boundary.kind != "z_target":
        raise ValueError("NDR scan needs z_target baths")
    grid = np.asarray(f_grid, float)
    if grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise ValueError("f_grid must be strictly increasing with at least two points")
    currents = energy_current_curve(config, grid, method)
    return decreasing_intervals(currents), currents
