"""Command-line front end: ``xxzrect {steady,pair,sweep,ndr,validate}``."""

import argparse
import csv
import io
import itertools
import json
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analysis import SWEEP_COLUMNS, SweepSpec, ndr_scan, run_pair, solve_currents, sweep
from .config import ConfigError, config_from_values, parse_document, parse_grid
from .model import make_config
from .oracle_n3 import OracleParams, energy_current_exact, spin_current_exact
from .steady import SteadyStateError

EXIT_OK, EXIT_PARSE, EXIT_SOLVE, EXIT_VALIDATION = 0, 2, 3, 4

# acceptance grid for the closed-form comparison (960 points)
VALIDATE_GRID = {
    "f": (-1.0, -0.5, -0.1, -0.01, 0.01, 0.1, 0.5, 1.0),
    "alpha": (0.5, 1.0),
    "Delta": (0.0, 0.5, 1.0, 1.5, 2.0),
    "delta": (0.0, 0.1, 0.25, 0.7),
    "B": (0.0, 0.1, 0.5),
}
VALIDATE_TOL = 1e-8
SMALL_EXACT = 1e-6
SMALL_ABS_TOL = 1e-10


def format_float(x):
    """Shortest round-trip repr; ``inf``/``undef`` markers for non-finite values."""
    x = float(x)
    if math.isnan(x):
        return "undef"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


_MARKERS = {"undef": math.nan, "inf": math.inf, "-inf": -math.inf}


def parse_float(text):
    return _MARKERS[text] if text in _MARKERS else float(text)


def _jsonable(obj):
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else format_float(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _restore(obj):
    if isinstance(obj, str) and obj in ("inf", "-inf", "undef"):
        return parse_float(obj)
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_restore(v) for v in obj]
    return obj


def dumps_record(record):
    return json.dumps(_jsonable(record), indent=2, sort_keys=True)


def loads_record(text):
    return _restore(json.loads(text))


def _diagnostics(result):
    return {
        "solver": result.solver,
        "residual": result.residual,
        "trace_defect": result.trace_defect,
        "hermiticity_defect": result.hermiticity_defect,
        "min_eigenvalue": result.min_eigenvalue,
        "wall_time": result.wall_time,
    }


def _stamp():
    return {"timestamp": datetime.now(timezone.utc).isoformat(), "version": __version__}


def run_record(config, result, report):
    return {"config": config.as_flat(), "diagnostics": _diagnostics(result), "currents": report.as_dict(), **_stamp()}


def pair_record(rec):
    return {
        "config": rec.config_forward.as_flat(),
        "config_reverse": rec.config_reverse.as_flat(),
        "F_fwd": rec.F_fwd, "F_rev": rec.F_rev, "J_fwd": rec.J_fwd, "J_rev": rec.J_rev,
        "F_xxz_fwd": rec.F_xxz_fwd, "F_xxz_rev": rec.F_xxz_rev,
        "R_E": rec.R_E, "R_spin": rec.R_spin,
        "diagnostics_fwd": _diagnostics(rec.steady_fwd),
        "diagnostics_rev": _diagnostics(rec.steady_rev),
        **_stamp(),
    }


def write_csv(rows, columns, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_float(row[c]) if isinstance(row[c], (float, np.floating)) else row[c]
                         for c in columns])


def read_csv(text):
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for key, value in row.items():
            try:
                parsed[key] = parse_float(value)
            except ValueError:
                parsed[key] = value
        rows.append(parsed)
    return rows


def validate_rows(grid=VALIDATE_GRID, method="auto", tol=VALIDATE_TOL):
    """Solver-vs-closed-form comparison over the product grid (N=3, gamma=1)."""
    rows = []
    for f, alpha, Delta, delta, B in itertools.product(*(grid[k] for k in ("f", "alpha", "Delta", "delta", "B"))):
        config = make_config(3, alpha=alpha, Delta=Delta, delta=delta, B=B, f=f, profile="z_graded")
        _, report = solve_currents(config, method)
        p = OracleParams(f, alpha, Delta, delta, B)
        row = {"f": f, "alpha": alpha, "Delta": Delta, "delta": delta, "B": B}
        for name, numeric, exact in (("J", report.J_mean, spin_current_exact(p)),
                                     ("F", report.F_mean, energy_current_exact(p))):
            err = abs(numeric - exact)
            allowed = SMALL_ABS_TOL if abs(exact) < SMALL_EXACT else tol * abs(exact)
            row.update({f"{name}_numeric": numeric, f"{name}_exact": exact, f"{name}_abs_delta": err,
                        f"{name}_ok": err <= allowed})
        rows.append(row)
    return rows


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _emit(text, path):
    out = _open_out(path)
    try:
        out.write(text if text.endswith("\n") else text + "\n")
    finally:
        if path:
            out.close()


def _load(args):
    text = open(args.config).read() if args.config else ""
    values = parse_document(text)
    for key in ("axis", "solver"):
        if getattr(args, key, None):
            values[key] = getattr(args, key)
    if getattr(args, "grid", None):
        values["grid"] = parse_grid(args.grid)
    return values


def cmd_steady(args, values):
    config = config_from_values(values)
    result, report = solve_currents(config, args.solver or values.get("solver", "auto"))
    _emit(dumps_record(run_record(config, result, report)), args.out)
    return EXIT_OK


def cmd_pair(args, values):
    rec = run_pair(config_from_values(values), args.solver or values.get("solver", "auto"))
    _emit(dumps_record(pair_record(rec)), args.out)
    return EXIT_OK


def cmd_sweep(args, values):
    if "axis" not in values or "grid" not in values:
        raise ConfigError("sweep needs both 'axis' and 'grid'")
    spec = SweepSpec(config_from_values(values), values["axis"], values["grid"],
                     args.solver or values.get("solver", "auto"))
    rows = sweep(spec, workers=args.workers)
    columns = ["value", *SWEEP_COLUMNS]
    if args.format == "json":
        _emit(dumps_record({"axis": spec.axis, "config": spec.base.as_flat(), "rows": rows}), args.out)
    else:
        out = _open_out(args.out)
        try:
            write_csv(rows, columns, out)
        finally:
            if args.out:
                out.close()
    failed = [r for r in rows if r["error"]]
    for r in failed:
        print(f"grid point {r['value']}: {r['error']}", file=sys.stderr)
    return EXIT_SOLVE if failed else EXIT_OK


def cmd_ndr(args, values):
    config = config_from_values(values)
    grid = values.get("grid") or parse_grid("0.05:1.0:0.05")
    intervals, currents = ndr_scan(config, grid, args.solver or values.get("solver", "auto"))
    record = {
        "config": config.as_flat(),
        "f": list(grid),
        "F": currents.tolist(),
        "intervals": [{"start_index": i, "end_index": j, "f_start": grid[i], "f_end": grid[j]}
                      for i, j in intervals],
        **_stamp(),
    }
    if args.format == "csv":
        out = _open_out(args.out)
        try:
            write_csv([{"f": f, "F": F} for f, F in zip(grid, currents)], ["f", "F"], out)
        finally:
            if args.out:
                out.close()
    else:
        _emit(dumps_record(record), args.out)
    print(f"{len(intervals)} NDR interval(s): "
          + ", ".join(f"[{grid[i]}, {grid[j]}]" for i, j in intervals), file=sys.stderr)
    return EXIT_OK


def cmd_validate(args, values):
    grid = dict(VALIDATE_GRID)
    for key in grid:
        if key in values:
            grid[key] = (values[key],)
    tol = args.tol if args.tol is not None else values.get("tol", VALIDATE_TOL)
    rows = validate_rows(grid, args.solver or values.get("solver", "auto"), tol)
    columns = list(rows[0])
    if args.format == "json":
        _emit(dumps_record({"tol": tol, "rows": rows}), args.out)
    else:
        out = _open_out(args.out)
        try:
            write_csv(rows, columns, out)
        finally:
            if args.out:
                out.close()
    max_j = max(r["J_abs_delta"] for r in rows)
    max_f = max(r["F_abs_delta"] for r in rows)
    bad = sum(not (r["J_ok"] and r["F_ok"]) for r in rows)
    print(f"{len(rows)} points, max |dJ| = {max_j:.3e}, max |dF| = {max_f:.3e}, failures = {bad}",
          file=sys.stderr)
    return EXIT_VALIDATION if bad else EXIT_OK


COMMANDS = {"steady": cmd_steady, "pair": cmd_pair, "sweep": cmd_sweep, "ndr": cmd_ndr, "validate": cmd_validate}


def build_parser():
    parser = argparse.ArgumentParser(prog="xxzrect", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", metavar="PATH", required=name != "validate")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--solver", choices=("auto", "dense_lu", "sparse_lu", "inverse_iteration", "krylov"))
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--tol", type=float)
        p.add_argument("--format", choices=("csv", "json"), default="json" if name in ("steady", "pair", "ndr")
                       else "csv")
        if name in ("sweep", "ndr"):
            p.add_argument("--grid", help="start:stop:step or comma list; overrides the config")
        if name == "sweep":
            p.add_argument("--axis")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        values = _load(args)
        return COMMANDS[args.command](args, values)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SteadyStateError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return EXIT_SOLVE


if __name__ == "__main__":
    sys.exit(main())
