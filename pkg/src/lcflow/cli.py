"""Command-line surface: solve, verify, counterexample, plot.

Exit codes: 0 success; 2 configuration or data-validation failure; 3
numerical failure (including residual orders below 1.7); 4 invariant breach
(named on stderr); 5 expected-negative outcome (counterexample oscillation
absent). Outputs are byte-identical across reruns and --threads settings:
floats are written with 17 significant digits, files with fixed "\n"
newlines, and no timestamps or environment lookups enter the output path.

CSV contracts
  fields.csv       t,r,psi,phi,u,p,d1,d2,d3 (times in config order, radii
                   ascending; p at t = 0 applies the pressure formula to the
                   initial fields)
  diagnostics.csv  t,arc_length,F_min,F_max,psi_min,psi_max,energy
  oscillation.csv  k,t_peak,v_peak,t_off,v_off
  residuals.json   per-equation {max_norm, l2_norm, h, tau, order_estimate}
                   plus an "invariants" block
"""

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import nonshrink, svgfig, verifier
from .config import initial_data_from_config, parse_config
from .errors import (ConfigError, InvalidArgumentError, NumericalError)
from .solution import ExactSolution
from .sphere_curve import F_map, phi_of_psi

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_INVARIANT = 4
EXIT_NEGATIVE = 5

_MIN_ORDER = 1.7


def _g17(v):
    return format(float(v), ".17g")


def _write_bytes(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as fh:
        fh.write(data)


def _write_csv(path, header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_g17(v) for v in row) + "\n")
    _write_bytes(path, buf.getvalue().encode("ascii"))


def _load_config(path):
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _grid(cfg):
    return np.linspace(0.0, cfg.r_max, cfg.n_r)


def run_solve(cfg, out_dir, threads=1):
    """Write fields.csv and diagnostics.csv for the configured times."""
    sol = ExactSolution(initial_data_from_config(cfg),
                        quad_tol=cfg.quadrature_abs)
    grid = _grid(cfg)
    field_rows = []
    diag_rows = []
    for t in cfg.times:
        snap = sol.snapshot(t, grid, threads=threads)
        fmin, fmax = verifier.f_range(snap)
        diag_rows.append((t, verifier.arc_length(snap), fmin, fmax,
                          float(np.min(snap.psi)), float(np.max(snap.psi)),
                          verifier.energy(snap)))
        for i in range(grid.size):
            field_rows.append((t, snap.r[i], snap.psi[i], snap.phi[i],
                               snap.u[i], snap.p[i], snap.d[i, 0],
                               snap.d[i, 1], snap.d[i, 2]))
    out = Path(out_dir)
    _write_csv(out / "fields.csv",
               ["t", "r", "psi", "phi", "u", "p", "d1", "d2", "d3"],
               field_rows)
    _write_csv(out / "diagnostics.csv",
               ["t", "arc_length", "F_min", "F_max", "psi_min", "psi_max",
                "energy"], diag_rows)
    if "json" in cfg.formats:
        doc = {"times": list(cfg.times),
               "arc_length": [row[1] for row in diag_rows],
               "energy": [row[6] for row in diag_rows]}
        _write_bytes(out / "diagnostics.json",
                     (json.dumps(doc, indent=2, sort_keys=True) + "\n")
                     .encode("ascii"))
    return EXIT_OK


def _invariant_monitors(sol, cfg, threads, inject_error):
    """Evaluate the invariant monitors; returns (breaches, measurements)."""
    grid = _grid(cfg)
    eps8 = 8.0 * np.finfo(float).eps
    breaches = []
    meas = {}
    norm_worst = 0.0
    franges = []
    arcs = []
    delta1 = sol.data.params.delta1
    psi_ok = True
    for k, t in enumerate(cfg.times):
        snap = sol.snapshot(t, grid, fields=("psi", "phi", "u", "d"),
                            threads=threads)
        d = snap.d.copy()
        if inject_error and k == len(cfg.times) - 1:
            d[d.shape[0] // 2, 2] += 1e-6  # deliberate fault for testing
        norm_worst = max(norm_worst, float(np.max(np.abs(
            np.sqrt(np.sum(d * d, axis=1)) - 1.0))))
        franges.append(verifier.f_range(snap))
        arcs.append(verifier.arc_length(snap))
        lo, hi = float(np.min(snap.psi)), float(np.max(snap.psi))
        if lo <= delta1 or hi >= math.pi - delta1:
            psi_ok = False
    meas["unit_norm_max_deviation"] = norm_worst
    if norm_worst > eps8:
        breaches.append("unit-norm")
    if not psi_ok:
        breaches.append("psi-range")
    nested = all(f2[0] >= f1[0] - 1e-8 and f2[1] <= f1[1] + 1e-8
                 for f1, f2 in zip(franges, franges[1:]))
    meas["f_ranges"] = franges
    if not nested:
        breaches.append("F-range-nesting")
    monotone = all(b <= a + 1e-8 for a, b in zip(arcs, arcs[1:]))
    meas["arc_lengths"] = arcs
    if not monotone:
        breaches.append("arc-length-monotonicity")
    return breaches, meas


def run_verify(cfg, out_dir, threads=1, inject_error=False):
    """Residual convergence study plus invariant monitors; residuals.json."""
    sol = ExactSolution(initial_data_from_config(cfg),
                        quad_tol=cfg.quadrature_abs)
    positive = [t for t in cfg.times if t > 0]
    if not positive:
        raise ConfigError([("grid.times",
                            "verify needs at least one positive time")])
    t0 = positive[0]
    r_lo = cfg.r_max / 8.0
    r_hi = cfg.r_max / 2.0
    by_eq, orders = verifier.residual_convergence(
        sol, t0, r_lo, r_hi, 4.0 * cfg.residual_h, 4.0 * cfg.residual_tau,
        levels=3, threads=threads)

    breaches, meas = _invariant_monitors(sol, cfg, threads, inject_error)

    doc = {}
    for eq, reps in by_eq.items():
        finest = reps[-1]
        doc[eq] = {"max_norm": finest.max_norm, "l2_norm": finest.l2_norm,
                   "h": finest.h, "tau": finest.tau,
                   "order_estimate": orders[eq]}
    doc["invariants"] = {
        "breaches": breaches,
        "unit_norm_max_deviation": meas["unit_norm_max_deviation"],
        "arc_lengths": meas["arc_lengths"],
        "f_ranges": [list(f) for f in meas["f_ranges"]],
    }
    _write_bytes(Path(out_dir) / "residuals.json",
                 (json.dumps(doc, indent=2, sort_keys=True) + "\n")
                 .encode("ascii"))

    if breaches:
        print("invariant breach: " + ", ".join(breaches), file=sys.stderr)
        return EXIT_INVARIANT
    if any(orders[eq] < _MIN_ORDER for eq in by_eq):
        bad = {eq: orders[eq] for eq in by_eq if orders[eq] < _MIN_ORDER}
        print(f"residual order below {_MIN_ORDER}: {bad}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def run_counterexample(cfg, out_dir):
    """Oscillation probe of the staircase heat evolution at the origin."""
    cx = cfg.counterexample
    schedule = nonshrink.StaircaseSchedule.polynomial(cx["c"], cx["p"],
                                                      int(cx["K"]))
    probes = int(cx["probes"])
    v0 = nonshrink.build_v0(schedule)
    times = nonshrink.probe_times(schedule, probes)
    series = nonshrink.origin_series(v0, times)
    rows = []
    ok = True
    for k in range(probes):
        t_peak = math.exp(times.log_peak[k])
        t_off = math.exp(times.log_off[k])
        v_peak = series[2 * k]
        v_off = series[2 * k + 1]
        rows.append((k, t_peak, v_peak, t_off, v_off))
        if not (v_peak >= 0.9 and v_off <= 0.1):
            ok = False
    _write_csv(Path(out_dir) / "oscillation.csv",
               ["k", "t_peak", "v_peak", "t_off", "v_off"], rows)
    if not ok:
        print("oscillation absent: origin series did not reach the "
              "0.9/0.1 bands", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def _read_csv(path):
    lines = Path(path).read_text(encoding="ascii").strip().split("\n")
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")]
                     for line in lines[1:]])
    return header, data


def run_plot(cfg, out_dir):
    """curve.svg and diagnostics.svg from a previous solve's outputs."""
    out = Path(out_dir)
    fields_path = out / "fields.csv"
    diag_path = out / "diagnostics.csv"
    if not fields_path.exists() or not diag_path.exists():
        raise ConfigError([(str(out), "missing solve outputs "
                            "(run `lcflow solve` first)")])
    from .sphere_curve import ModelParams
    params = ModelParams(beta=cfg.beta, delta1=cfg.delta1)

    _, fdata = _read_csv(fields_path)
    _, ddata = _read_csv(diag_path)
    times = []
    psi_ranges = []
    for t in sorted(set(fdata[:, 0]), key=lambda t: list(cfg.times).index(t)
                    if t in cfg.times else t):
        rows = fdata[fdata[:, 0] == t]
        times.append(t)
        psi_ranges.append((float(np.min(rows[:, 2])),
                           float(np.max(rows[:, 2]))))
    phi_of = lambda psi: phi_of_psi(psi, params)
    _write_bytes(out / "curve.svg",
                 svgfig.curve_figure(params, times, psi_ranges, phi_of))
    _write_bytes(out / "diagnostics.svg",
                 svgfig.diagnostics_figure(ddata[:, 0], ddata[:, 1],
                                           ddata[:, 3], ddata[:, 2],
                                           ddata[:, 6]))
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lcflow",
        description="Exact rotationally symmetric liquid-crystal flows: "
                    "solve, verify, counterexample, plot.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_threads, needs_inject in (
            ("solve", True, False), ("verify", True, True),
            ("counterexample", False, False), ("plot", False, False)):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON config path")
        sp.add_argument("--out", default=None,
                        help="output directory (default: config outputs.directory)")
        if needs_threads:
            sp.add_argument("--threads", type=int, default=1)
        if needs_inject:
            sp.add_argument("--inject-error", action="store_true",
                            help="corrupt one director sample to exercise "
                                 "the invariant monitors")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        out_dir = args.out if args.out is not None else cfg.out_directory
        if args.command == "solve":
            return run_solve(cfg, out_dir, threads=args.threads)
        if args.command == "verify":
            return run_verify(cfg, out_dir, threads=args.threads,
                              inject_error=args.inject_error)
        if args.command == "counterexample":
            return run_counterexample(cfg, out_dir)
        return run_plot(cfg, out_dir)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except InvalidArgumentError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
