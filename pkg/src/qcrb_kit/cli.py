"""Command-line front end: compute, sweep-w, sweep-spectrum, verify, simulate.

Exit codes: 0 all checks pass, 1 configuration error, 2 numerical check
failure. Output is CSV (with a versioned `#qcrb-kit v1` header comment) or
JSON; missing-route cells are explicit nulls. Set QCRB_LOG to a logging
level name for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .classical import bound_check
from .configio import load_json, model_from_config, povm_from_config
from .errors import ConfigError, DomainError, QcrbError, ZeroInformationError
from .models import (
    DEFAULT_FD_STEP,
    complex_rotation_family,
    fixed_spectrum_model,
    QubitMixtureModel,
    constant_weight,
    rotation_family,
)
from .quantum import relation_report
from .simulate import SimConfig, bound_chain_ok, run_sim
from .verify import VerifyOptions, all_passed, run_suite

logger = logging.getLogger("qcrb_kit")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2

CSV_VERSION_TAG = "#qcrb-kit v1"
DEFAULT_TOL_ANALYTIC = 1e-8
DEFAULT_TOL_FD = 1e-6

COMPUTE_COLUMNS = [
    "theta", "kind", "i_h_sld", "i_h_closed", "i_wy_generic", "i_wy_closed",
    "ratio", "gap", "alpha", "beta", "gamma", "score_mean",
    "sharp_bound", "approx_bound",
    "res_route_i_h", "res_route_i_wy", "res_relation",
    "cfi", "cfi_gap", "cfi_ok", "crb",
]
SWEEP_W_COLUMNS = [
    "w", "theta", "i_h", "i_wy", "ratio", "gap", "alpha", "beta", "gamma",
    "res_route_i_h", "res_route_i_wy", "res_prop1",
]
SWEEP_SPECTRUM_COLUMNS = [
    "t", "theta", "i_h", "i_wy", "gap", "gamma",
    "res_route_i_h", "res_route_i_wy", "res_prop2",
]
VERIFY_COLUMNS = ["name", "kind", "residual", "tol", "passed", "detail"]
SIMULATE_COLUMNS = [
    "theta0", "n_samples", "seed", "empirical_var", "standard_error_of_var",
    "crb", "qcrb", "approx_qcrb", "approx_minus_qcrb", "bound_chain_ok",
]


# --- emission ----------------------------------------------------------------

def _pyify(value):
    """Coerce numpy scalars to builtins so formatting and JSON stay portable."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def format_cell(value) -> str:
    value = _pyify(value)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_cell(text: str):
    if text == "null":
        return None
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def emit_csv(columns, rows, meta: dict) -> str:
    lines = [f"{CSV_VERSION_TAG} columns={','.join(columns)}"]
    for key in sorted(meta):
        lines.append(f"#{key} {format_cell(meta[key])}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def parse_csv(text: str):
    """Inverse of emit_csv: (columns, rows, meta-comment lines)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith(CSV_VERSION_TAG):
        raise ConfigError(f"not a {CSV_VERSION_TAG} file")
    comments = []
    i = 1
    while i < len(lines) and lines[i].startswith("#"):
        comments.append(lines[i])
        i += 1
    if i >= len(lines):
        raise ConfigError("missing CSV header row")
    columns = lines[i].split(",")
    rows = []
    for line in lines[i + 1:]:
        if not line:
            continue
        cells = line.split(",")
        rows.append({c: parse_cell(v) for c, v in zip(columns, cells)})
    return columns, rows, comments


def emit_json(columns, rows, meta: dict) -> str:
    payload = {
        "format": "qcrb-kit v1",
        "meta": {k: _pyify(v) for k, v in meta.items()},
        "columns": list(columns),
        "rows": [{c: _pyify(row.get(c)) for c in columns} for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def _write_output(text: str, out: str) -> None:
    if out == "stdout":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(args, columns, rows, meta) -> None:
    meta = dict(meta)
    meta.setdefault("tol_analytic", args.tol_analytic)
    meta.setdefault("tol_fd", args.tol_fd)
    meta.setdefault("fd_step", args.fd_step)
    fn = emit_csv if args.format == "csv" else emit_json
    _write_output(fn(columns, rows, meta), args.out)


# --- shared helpers ----------------------------------------------------------

def parse_grid(spec: str, name: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name}: expected lo:hi:steps, got {spec!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc
    if steps < 1:
        raise ConfigError(f"{name}: steps must be >= 1")
    if steps == 1:
        return np.array([lo])
    if not lo < hi:
        raise ConfigError(f"{name}: grid must be strictly increasing (lo < hi)")
    return np.linspace(lo, hi, steps)


def _thetas(args) -> np.ndarray:
    if getattr(args, "theta_grid", None):
        return parse_grid(args.theta_grid, "--theta-grid")
    return np.array([args.theta])


def _route_tol(args, model) -> float:
    return args.tol_analytic if model.has_analytic_derivative else args.tol_fd


def _relation_residual(report):
    for key in ("pure_doubling", "prop1", "prop2", "pure_doubling_abs"):
        if key in report.residuals:
            return report.residuals[key]
    return None


def _report_row(report) -> dict:
    return {
        "theta": report.theta,
        "kind": report.kind,
        "i_h_sld": report.i_h_sld,
        "i_h_closed": report.i_h_closed,
        "i_wy_generic": report.i_wy_generic,
        "i_wy_closed": report.i_wy_closed,
        "ratio": report.ratio,
        "gap": report.gap,
        "alpha": report.alpha,
        "beta": report.beta,
        "gamma": report.gamma,
        "score_mean": report.score_mean,
        "sharp_bound": report.sharp_bound,
        "approx_bound": report.approx_bound,
        "res_route_i_h": report.residuals.get("route_i_h"),
        "res_route_i_wy": report.residuals.get("route_i_wy"),
        "res_relation": _relation_residual(report),
    }


# --- commands ----------------------------------------------------------------

def cmd_compute(args) -> int:
    model = model_from_config(load_json(args.model), fd_step=args.fd_step)
    povm = povm_from_config(load_json(args.povm)) if args.povm else None
    rows = []
    failures = 0
    for theta in _thetas(args):
        theta = float(theta)
        report = relation_report(model, theta)
        row = _report_row(report)
        tol = _route_tol(args, model)
        for key in ("res_route_i_h", "res_route_i_wy", "res_relation"):
            if row[key] is not None and row[key] > tol:
                failures += 1
                logger.warning("theta=%g: %s=%.3e exceeds %g", theta, key, row[key], tol)
        if report.route_errors:
            logger.info("theta=%g route errors: %s", theta, report.route_errors)
        row.update({"cfi": None, "cfi_gap": None, "cfi_ok": None, "crb": None})
        if povm is not None:
            check = bound_check(model, theta, povm)
            row.update({"cfi": check.i, "cfi_gap": check.gap, "cfi_ok": check.ok, "crb": check.crb})
            if not check.ok:
                failures += 1
                logger.warning("theta=%g: classical information exceeds the bound", theta)
        rows.append(row)
    _emit(args, COMPUTE_COLUMNS, rows, {"model": args.model, "povm": args.povm or None})
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def _sweep_family(args):
    if args.psi1 == "rotation":
        return rotation_family()
    if args.psi1 == "complex-rotation":
        return complex_rotation_family()
    raise ConfigError(f"--psi1: unknown family {args.psi1!r}")


def cmd_sweep_w(args) -> int:
    grid = parse_grid(args.w_grid, "--w-grid")
    if grid[0] <= 0.0 or grid[-1] >= 1.0:
        raise DomainError(f"--w-grid touches the boundary of (0, 1): {args.w_grid}")
    family = _sweep_family(args)
    theta = float(args.theta)
    rows = []
    failures = 0
    for w in grid:
        model = QubitMixtureModel(family, constant_weight(float(w)), fd_step=args.fd_step)
        report = relation_report(model, theta)
        if report.i_h_closed is None or report.i_wy_closed is None:
            raise QcrbError(f"closed routes unavailable at w={w}: {report.route_errors}")
        gap = report.i_wy_closed - report.i_h_closed
        ratio = report.i_wy_closed / report.i_h_closed if report.i_h_closed > 1e-8 else None
        rows.append({
            "w": float(w),
            "theta": theta,
            "i_h": report.i_h_closed,
            "i_wy": report.i_wy_closed,
            "ratio": ratio,
            "gap": gap,
            "alpha": report.alpha,
            "beta": report.beta,
            "gamma": report.gamma,
            "res_route_i_h": report.residuals.get("route_i_h"),
            "res_route_i_wy": report.residuals.get("route_i_wy"),
            "res_prop1": report.residuals.get("prop1"),
        })
        tol = _route_tol(args, model)
        for key in ("res_route_i_h", "res_route_i_wy", "res_prop1"):
            if rows[-1][key] is not None and rows[-1][key] > tol:
                failures += 1
                logger.warning("w=%g: %s=%.3e exceeds %g", w, key, rows[-1][key], tol)
    # the gap must not shrink as the weight moves away from 1/2
    ordered = sorted(rows, key=lambda r: abs(r["w"] - 0.5))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur["gap"] < prev["gap"] - 1e-12:
            failures += 1
            logger.warning("gap decreases from w=%g to w=%g", prev["w"], cur["w"])
    for row in rows:
        if abs(row["w"] - 0.5) < 1e-12 and abs(row["gap"]) > 1e-10:
            failures += 1
            logger.warning("gap at w=1/2 is %.3e, expected 0", row["gap"])
    _emit(args, SWEEP_W_COLUMNS, rows, {"psi1": args.psi1})
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def cmd_sweep_spectrum(args) -> int:
    try:
        start = np.array([float(v) for v in args.start_spectrum.split(",")])
    except ValueError as exc:
        raise ConfigError(f"--start-spectrum: {exc}") from exc
    if start.size < 2:
        raise DomainError("--start-spectrum needs at least two eigenvalue weights")
    if np.any(start < 0.0) or abs(float(np.sum(start)) - 1.0) > 1e-10:
        raise DomainError(f"--start-spectrum must be a distribution, got {args.start_spectrum}")
    n = start.size
    uniform = np.full(n, 1.0 / n)
    grid = parse_grid(args.t_grid, "--t-grid")
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise DomainError("--t-grid must lie inside [0, 1]")
    theta = float(args.theta)
    rows = []
    failures = 0
    for t in grid:
        spectrum = (1.0 - float(t)) * start + float(t) * uniform
        model = fixed_spectrum_model(
            spectrum, seed=args.seed, frame=args.frame, fd_step=args.fd_step
        )
        report = relation_report(model, theta)
        if report.i_h_closed is None or report.i_wy_closed is None:
            raise QcrbError(f"closed routes unavailable at t={t}: {report.route_errors}")
        rows.append({
            "t": float(t),
            "theta": theta,
            "i_h": report.i_h_closed,
            "i_wy": report.i_wy_closed,
            "gap": report.i_wy_closed - report.i_h_closed,
            "gamma": report.gamma,
            "res_route_i_h": report.residuals.get("route_i_h"),
            "res_route_i_wy": report.residuals.get("route_i_wy"),
            "res_prop2": report.residuals.get("prop2"),
        })
        tol = _route_tol(args, model)
        for key in ("res_route_i_h", "res_route_i_wy", "res_prop2"):
            if rows[-1][key] is not None and rows[-1][key] > tol:
                failures += 1
                logger.warning("t=%g: %s=%.3e exceeds %g", t, key, rows[-1][key], tol)
    gaps = [abs(r["gap"]) for r in rows]
    monotone = all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
    if abs(grid[-1] - 1.0) < 1e-12 and gaps[-1] > 1e-7:
        failures += 1
        logger.warning("gap at the uniform spectrum is %.3e, expected <= 1e-7", gaps[-1])
    meta = {"frame": args.frame, "seed": args.seed, "gap_monotone_nonincreasing": monotone}
    _emit(args, SWEEP_SPECTRUM_COLUMNS, rows, meta)
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def cmd_verify(args, catalog=None) -> int:
    options = VerifyOptions(
        tol_analytic=args.tol_analytic if args.tol_analytic_set else None,
        tol_fd=args.tol_fd if args.tol_fd_set else None,
        fd_step=args.fd_step,
        seed=args.seed,
    )
    results = run_suite(catalog=catalog, options=options)
    rows = [r.to_row() for r in results]
    passed = all_passed(results)
    _emit(args, VERIFY_COLUMNS, rows, {"passed": passed})
    return EXIT_OK if passed else EXIT_NUMERIC


def cmd_simulate(args) -> int:
    model = model_from_config(load_json(args.model), fd_step=args.fd_step)
    povm = povm_from_config(load_json(args.povm))
    try:
        cfg = SimConfig(
            model=model,
            povm=povm,
            theta0=args.theta0,
            n_samples=args.n_samples,
            seed=args.seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    result = run_sim(cfg)
    ok = bound_chain_ok(result)
    row = {"theta0": args.theta0, "n_samples": args.n_samples, "seed": args.seed}
    row.update(result.to_json_dict())
    row["approx_minus_qcrb"] = result.approx_qcrb - result.qcrb
    row["bound_chain_ok"] = ok
    _emit(args, SIMULATE_COLUMNS, [row], {"model": args.model, "povm": args.povm})
    return EXIT_OK if ok else EXIT_NUMERIC


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcrb",
        description="Fisher / Helstrom / skew information reports and bound checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default="stdout", help="output path or 'stdout'")
        p.add_argument("--fd-step", type=float, default=DEFAULT_FD_STEP, dest="fd_step")
        p.add_argument("--tol-analytic", type=float, default=DEFAULT_TOL_ANALYTIC,
                       dest="tol_analytic")
        p.add_argument("--tol-fd", type=float, default=DEFAULT_TOL_FD, dest="tol_fd")
        p.add_argument("--seed", type=int, default=20260810)

    p = sub.add_parser("compute", help="information report at one or more theta")
    add_common(p)
    p.add_argument("--model", required=True, help="model config JSON path")
    p.add_argument("--povm", default=None, help="optional POVM config JSON path")
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--theta-grid", default=None, dest="theta_grid", help="lo:hi:steps")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("sweep-w", help="constant-weight sweep of the mixture gap")
    add_common(p)
    p.add_argument("--w-grid", default="0.5:0.9:5", dest="w_grid", help="lo:hi:steps in (0,1)")
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--psi1", choices=("rotation", "complex-rotation"), default="rotation")
    p.set_defaults(fn=cmd_sweep_w)

    p = sub.add_parser("sweep-spectrum", help="interpolate a spectrum toward uniform")
    add_common(p)
    p.add_argument("--start-spectrum", default="0.7,0.2,0.1", dest="start_spectrum")
    p.add_argument("--t-grid", default="0:1:11", dest="t_grid", help="lo:hi:steps in [0,1]")
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--frame", choices=("random", "rotation"), default="random")
    p.set_defaults(fn=cmd_sweep_spectrum)

    p = sub.add_parser("verify", help="run the invariant suite over the builtin catalog")
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo check of the bound chain")
    add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--povm", required=True)
    p.add_argument("--theta0", type=float, default=0.3)
    p.add_argument("--n-samples", type=int, default=100_000, dest="n_samples")
    p.set_defaults(fn=cmd_simulate)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("QCRB_LOG")
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO) if level else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    # explicit-override detection for verify's tolerance classes
    argv_list = list(sys.argv[1:] if argv is None else argv)
    args.tol_analytic_set = any(a == "--tol-analytic" or a.startswith("--tol-analytic=") for a in argv_list)
    args.tol_fd_set = any(a == "--tol-fd" or a.startswith("--tol-fd=") for a in argv_list)
    try:
        return args.fn(args)
    except ConfigError as exc:
        logger.error("configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ZeroInformationError as exc:
        print(f"error: ZeroInformation: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except QcrbError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
