"""Command-line surface: reproducible CSV/JSON artifacts for every computation.

Commands: constants, spectrum, scan, evolve, critical, scaling, validate,
figures.  Every run writes a manifest with the fully resolved configuration
next to its outputs, all files are written atomically, and identical
configurations produce byte-identical artifacts.  Floats are serialized
with 17 significant digits so CSV round-trips are lossless.

Exit codes: 0 success, 2 configuration error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .analysis import (
    coupling_scan_center,
    critical_predictions,
    critical_reference,
    find_critical_gamma,
    scan_gamma,
    subcritical_scaling,
    verify_failure_bounds,
    verify_transition_bounds,
)
from .constants import build_constant_table
from .evolution import (
    DEFAULT_ORACLE_CAP,
    DenseReference,
    default_time_horizon,
    find_optimal_time,
    spectral_coefficients,
    trace,
)
from .graphs import GraphFamily, level_spectrum
from .secular import ground_and_gap, secular_value, solve_spectrum

OUTPUT_DIR_ENV = "QWSEARCH_OUTPUT_DIR"

# Datasets behind the four standard figures: coupling scans for the high-
# dimensional families and each lattice dimension near N ~ 1000, plus the
# secular function of the 16-vertex square lattice at gamma = 1.
FIGURE_SCANS = [
    ("fig1_complete_1024", "complete:1024"),
    ("fig2_hypercube_10", "hypercube:10"),
    ("fig3_lattice_5_4", "lattice:5:4"),
    ("fig3_lattice_4_6", "lattice:4:6"),
    ("fig3_lattice_3_10", "lattice:3:10"),
    ("fig3_lattice_2_32", "lattice:2:32"),
]
FIGURE_SECULAR_GRAPH = "lattice:2:4"
VALIDATION_FAMILIES = (
    "complete:256", "hypercube:8", "lattice:2:16",
    "lattice:3:8", "lattice:4:6", "lattice:5:4",
)


class GraphSpecError(ValueError):
    pass


def parse_graph_spec(text: str) -> GraphFamily:
    """Parse complete:<N> | hypercube:<n> | lattice:<d>:<L>."""
    parts = text.split(":")
    kind = parts[0]

    def want_int(part: str, pos: int) -> int:
        if not part or not (part.isdigit() or (part[0] == "-" and part[1:].isdigit())):
            raise GraphSpecError(f"expected an integer at position {pos} of {text!r}")
        return int(part)

    if kind == "complete":
        if len(parts) != 2:
            raise GraphSpecError(f"complete takes one field, got {text!r}")
        return GraphFamily.complete(want_int(parts[1], 1))
    if kind == "hypercube":
        if len(parts) != 2:
            raise GraphSpecError(f"hypercube takes one field, got {text!r}")
        return GraphFamily.hypercube(want_int(parts[1], 1))
    if kind == "lattice":
        if len(parts) != 3:
            raise GraphSpecError(f"lattice takes two fields, got {text!r}")
        return GraphFamily.lattice(want_int(parts[1], 1), want_int(parts[2], 2))
    raise GraphSpecError(f"unknown family {kind!r} at position 0 of {text!r}")


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    gamma: float | None = None
    gamma_lo: float | None = None
    gamma_hi: float | None = None
    points: int = 101
    time_max: float | None = None
    time_points: int = 512
    dim: int | None = None
    sides: tuple[int, ...] | None = None
    output_dir: str = "."
    fmt: str = "csv"
    plot: str = "none"
    seed: int = 0
    oracle_cap: int = DEFAULT_ORACLE_CAP


# ---------------------------------------------------------------------------
# Serialization helpers
# ---------------------------------------------------------------------------

def _fnum(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(float(x), ".17g")


def _atomic_write(path: str, data: str):
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fnum(v) if isinstance(v, (int, float, np.floating, np.integer))
                              else str(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def write_json(path: str, payload) -> str:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _write_manifest(cfg: RunConfig, outputs: list[str]) -> str:
    payload = {
        "artifact_version": __version__,
        "config": asdict(cfg),
        "outputs": sorted(os.path.basename(p) for p in outputs),
    }
    path = os.path.join(cfg.output_dir, f"{cfg.command}.manifest.json")
    return write_json(path, payload)


def _maybe_json_mirror(cfg: RunConfig, stem: str, header: list[str],
                       rows: list[list], outputs: list[str]):
    if cfg.fmt == "json":
        payload = [dict(zip(header, [float(v) if isinstance(v, (float, np.floating))
                                     else v for v in row])) for row in rows]
        outputs.append(write_json(os.path.join(cfg.output_dir, f"{stem}.json"), payload))


def _emit_table(cfg: RunConfig, stem: str, header: list[str], rows: list[list],
                outputs: list[str]):
    outputs.append(write_csv(os.path.join(cfg.output_dir, f"{stem}.csv"), header, rows))
    _maybe_json_mirror(cfg, stem, header, rows, outputs)
    if cfg.plot == "gnuplot" or cfg.command == "figures":
        outputs.append(_write_gnuplot(cfg, stem, header))
    if cfg.plot == "svg":
        outputs.append(_write_svg(cfg, stem, header, rows))


def _write_gnuplot(cfg: RunConfig, stem: str, header: list[str]) -> str:
    cols = ", \\\n".join(
        f"    '{stem}.csv' using 1:{i + 2} with lines title '{name}'"
        for i, name in enumerate(header[1:])
    )
    script = (
        "set datafile separator comma\n"
        "set key autotitle columnhead\n"
        "set key outside\n"
        "set terminal svg size 900,600\n"
        f"set output '{stem}.svg'\n"
        f"set xlabel '{header[0]}'\n"
        f"plot \\\n{cols}\n"
    )
    path = os.path.join(cfg.output_dir, f"{stem}.gp")
    _atomic_write(path, script)
    return path


def _write_svg(cfg: RunConfig, stem: str, header: list[str], rows: list[list]) -> str:
    """Minimal dependency-free polyline chart rendered from the CSV rows."""
    width, height, pad = 900, 600, 60
    xs = [float(r[0]) for r in rows]
    series = [[float(r[i]) for r in rows] for i in range(1, len(header))]
    finite = [v for s in series for v in s if math.isfinite(v)]
    x0, x1 = min(xs), max(xs)
    y0, y1 = (min(finite), max(finite)) if finite else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
               "#8c564b", "#17becf", "#7f7f7f"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="{height - 15}" text-anchor="middle" '
        f'font-size="14">{header[0]}</text>',
    ]
    for k, s in enumerate(series):
        pts = " ".join(f"{sx(x):.2f},{sy(v):.2f}" for x, v in zip(xs, s) if math.isfinite(v))
        color = palette[k % len(palette)]
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{pts}"/>')
        parts.append(f'<text x="{width - pad + 5}" y="{pad + 16 * k}" font-size="12" '
                     f'fill="{color}">{header[k + 1]}</text>')
    parts.append("</svg>")
    path = os.path.join(cfg.output_dir, f"{stem}.svg")
    _atomic_write(path, "\n".join(parts) + "\n")
    return path


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

SCAN_HEADER = ["gamma", "e0", "e1", "gap",
               "overlap_s_psi0", "overlap_s_psi1", "overlap_w_psi0", "overlap_w_psi1"]


def _scan_rows(records) -> list[list]:
    return [[r.gamma, r.e0, r.e1, r.gap, r.overlap_s_psi0, r.overlap_s_psi1,
             r.overlap_w_psi0, r.overlap_w_psi1] for r in records]


def _cmd_constants(cfg: RunConfig) -> list[str]:
    header = ["kind", "j", "d", "size", "a", "value", "error_estimate", "method", "truncation"]
    rows = []
    for e in build_constant_table():
        rows.append([e.kind,
                     "" if e.j is None else e.j,
                     "" if e.d is None else e.d,
                     "" if e.size is None else e.size,
                     "" if e.a is None else _fnum(e.a),
                     e.value, e.error_estimate, e.method, e.truncation])
    outputs: list[str] = []
    outputs.append(write_csv(os.path.join(cfg.output_dir, "constants.csv"), header, rows))
    if cfg.fmt == "json":
        payload = [asdict(e) for e in build_constant_table()]
        outputs.append(write_json(os.path.join(cfg.output_dir, "constants.json"), payload))
    return outputs


def _cmd_spectrum(cfg: RunConfig) -> list[str]:
    graph = parse_graph_spec(cfg.graph)
    spec = solve_spectrum(level_spectrum(graph), cfg.gamma)
    header = ["index", "energy", "fprime", "w_weight", "s_weight"]
    rows = [[i, spec.energies[i], spec.fprimes[i], spec.w_weights[i], spec.s_weights[i]]
            for i in range(spec.num_roots)]
    outputs: list[str] = []
    _emit_table(cfg, "spectrum", header, rows, outputs)
    outputs.append(write_json(os.path.join(cfg.output_dir, "spectrum_summary.json"), {
        "graph": graph.label(),
        "gamma": cfg.gamma,
        "num_roots": spec.num_roots,
        "irrelevant_count": spec.irrelevant_count,
        "sum_rule": spec.sum_rule(),
    }))
    return outputs


def _cmd_scan(cfg: RunConfig) -> list[str]:
    graph = parse_graph_spec(cfg.graph)
    if cfg.gamma_lo is None or cfg.gamma_hi is None:
        center = coupling_scan_center(level_spectrum(graph))
        lo, hi = 0.5 * center, 1.5 * center
    else:
        lo, hi = cfg.gamma_lo, cfg.gamma_hi
    records = scan_gamma(graph, lo, hi, cfg.points)
    outputs: list[str] = []
    _emit_table(cfg, "scan", SCAN_HEADER, _scan_rows(records), outputs)
    return outputs


def _cmd_evolve(cfg: RunConfig) -> list[str]:
    graph = parse_graph_spec(cfg.graph)
    spec = solve_spectrum(level_spectrum(graph), cfg.gamma)
    t_max = cfg.time_max if cfg.time_max is not None else default_time_horizon(graph.num_vertices)
    tr = trace(spec, t_max, cfg.time_points)
    header = ["time", "amplitude_re", "amplitude_im", "probability"]
    rows = [[t, a.real, a.imag, p] for t, a, p in zip(tr.times, tr.amplitudes, tr.probabilities)]
    outputs: list[str] = []
    _emit_table(cfg, "evolve", header, rows, outputs)
    t_star, p_star = find_optimal_time(spec, t_max)
    outputs.append(write_json(os.path.join(cfg.output_dir, "evolve_summary.json"), {
        "graph": graph.label(), "gamma": cfg.gamma, "t_max": t_max,
        "t_star": t_star, "p_star": p_star,
    }))
    return outputs


def _bound_payload(report) -> dict:
    return {
        "graph": report.graph,
        "gamma": report.gamma,
        "gamma_reference": report.gamma_reference,
        "margin": report.margin,
        "side": report.side,
        "checks": [{"bound_id": c.bound_id, "lhs": c.lhs, "rhs": c.rhs,
                    "slack": c.slack, "pass": c.passed, "applicable": c.applicable}
                   for c in report.checks],
        "all_pass": report.all_pass(),
    }


def _cmd_critical(cfg: RunConfig) -> list[str]:
    graph = parse_graph_spec(cfg.graph)
    gc = find_critical_gamma(graph)
    spectrum = level_spectrum(graph)
    e0, e1, gap = ground_and_gap(spectrum, gc)
    payload = {
        "graph": graph.label(),
        "gamma_critical": gc,
        "gap": gap,
        "e0": e0,
        "e1": e1,
        "scan_center": coupling_scan_center(spectrum),
    }
    if graph.kind == "lattice" and graph.dim >= 2:
        ref = critical_reference(graph)
        payload["gamma_reference"] = ref
        payload["bounds"] = [
            _bound_payload(verify_transition_bounds(graph, 0.5 * ref)),
            _bound_payload(verify_transition_bounds(graph, 2.0 * ref)),
            _bound_payload(verify_failure_bounds(graph, 0.5 * ref)),
            _bound_payload(verify_failure_bounds(graph, 2.0 * ref)),
        ]
    outputs = [write_json(os.path.join(cfg.output_dir, "critical.json"), payload)]
    records = scan_gamma(graph, 0.5 * gc, 1.5 * gc, cfg.points)
    _emit_table(cfg, "critical_scan", SCAN_HEADER, _scan_rows(records), outputs)
    return outputs


def _cmd_scaling(cfg: RunConfig) -> list[str]:
    d = cfg.dim
    sides = list(cfg.sides)
    outputs: list[str] = []
    if d >= 4:
        records = critical_predictions(d, sides)
        header = ["num_vertices", "gamma_used", "e0_measured", "e0_predicted",
                  "e1_measured", "e1_predicted", "fprime0_measured", "fprime_predicted",
                  "p_star", "p_predicted", "t_star", "t_predicted", "window_half_width"]
        rows = [[r.num_vertices, r.gamma_used, r.e0_measured, r.e0_predicted,
                 r.e1_measured, r.e1_predicted, r.fprime0_measured, r.fprime_predicted,
                 r.p_star, r.p_predicted, r.t_star, r.t_predicted, r.window_half_width]
                for r in records]
        _emit_table(cfg, "scaling_predictions", header, rows, outputs)
    else:
        report = subcritical_scaling(d, sides)
        header = ["num_vertices", "gamma_used", "gap", "t_star", "p_star", "runtime_metric"]
        rows = [[r.num_vertices, r.gamma_used, r.gap, r.t_star, r.p_star, r.runtime_metric]
                for r in report.records]
        _emit_table(cfg, "scaling_records", header, rows, outputs)
        outputs.append(write_json(os.path.join(cfg.output_dir, "scaling_report.json"), {
            "dim": report.dim,
            "x0_at_zero": report.x0_at_zero,
            "checks": [{"bound_id": c.bound_id, "lhs": c.lhs, "rhs": c.rhs,
                        "slack": c.slack, "pass": c.passed, "applicable": c.applicable}
                       for c in report.checks],
        }))
    return outputs


def _cmd_validate(cfg: RunConfig) -> list[str]:
    rng = np.random.default_rng(cfg.seed)
    results = []
    worst = 0.0
    for label in VALIDATION_FAMILIES:
        graph = parse_graph_spec(label)
        if graph.num_vertices > cfg.oracle_cap:
            results.append({"graph": label, "skipped": True,
                            "reason": f"N={graph.num_vertices} above oracle cap"})
            continue
        spectrum = level_spectrum(graph)
        center = coupling_scan_center(spectrum)
        horizon = default_time_horizon(graph.num_vertices)
        max_amp = max_eig = max_w = max_s = 0.0
        for _ in range(10):
            gamma = float(rng.uniform(center / 4.0, 4.0 * center))
            w_index = int(rng.integers(0, graph.num_vertices))
            dense = DenseReference(graph, gamma, w_index, cap=cfg.oracle_cap)
            spec = solve_spectrum(spectrum, gamma)
            coeffs = spectral_coefficients(spec)
            for _ in range(2):
                t = float(rng.uniform(0.0, horizon))
                a_spec = complex(np.sum(coeffs * np.exp(-1j * spec.energies * t)))
                max_amp = max(max_amp, abs(dense.amplitude(t) - a_spec))
            eig_d, w_d, s_d = _clustered(dense.eigenvalues, dense.w_overlaps_sq(),
                                         dense.s_overlaps_sq())
            eig_s, w_s, s_s = _clustered(
                np.concatenate([spec.energies, np.repeat(gamma * spectrum.energies,
                                                         spectrum.multiplicities - 1)]),
                np.concatenate([spec.w_weights, np.zeros(spec.irrelevant_count)]),
                np.concatenate([spec.s_weights, np.zeros(spec.irrelevant_count)]))
            if len(eig_d) == len(eig_s):
                max_eig = max(max_eig, float(np.max(np.abs(eig_d - eig_s))))
                max_w = max(max_w, float(np.max(np.abs(w_d - w_s))))
                max_s = max(max_s, float(np.max(np.abs(s_d - s_s))))
            else:
                max_eig = math.inf
        ok = max(max_amp, max_eig, max_w, max_s) < 1e-8
        worst = max(worst, max_amp, max_eig, max_w, max_s)
        results.append({"graph": label, "skipped": False, "pairs": 20,
                        "max_amplitude_delta": max_amp, "max_eigenvalue_delta": max_eig,
                        "max_w_weight_delta": max_w, "max_s_weight_delta": max_s,
                        "pass": ok})
    payload = {"seed": cfg.seed, "oracle_cap": cfg.oracle_cap,
               "worst_delta": worst, "families": results,
               "all_pass": all(r.get("pass", True) for r in results)}
    path = write_json(os.path.join(cfg.output_dir, "validate.json"), payload)
    if not payload["all_pass"]:
        raise RuntimeError(f"oracle validation failed; see {path}")
    return [path]


def _clustered(energies: np.ndarray, w: np.ndarray, s: np.ndarray, tol: float = 1e-7):
    """Aggregate weights over near-degenerate eigenvalue clusters.

    Dense eigenvectors of a degenerate level mix arbitrarily, so only
    cluster-aggregated overlaps are basis-independent comparands.
    """
    order = np.argsort(energies)
    e, w, s = energies[order], w[order], s[order]
    boundaries = np.flatnonzero(np.diff(e) > tol) + 1
    groups = np.split(np.arange(len(e)), boundaries)
    ce = np.array([e[g].mean() for g in groups])
    cw = np.array([w[g].sum() for g in groups])
    cs = np.array([s[g].sum() for g in groups])
    return ce, cw, cs


def _cmd_figures(cfg: RunConfig) -> list[str]:
    outputs: list[str] = []
    for stem, label in FIGURE_SCANS:
        graph = parse_graph_spec(label)
        center = coupling_scan_center(level_spectrum(graph))
        records = scan_gamma(graph, 0.5 * center, 1.5 * center, 101)
        _emit_table(cfg, stem, SCAN_HEADER, _scan_rows(records), outputs)
    graph = parse_graph_spec(FIGURE_SECULAR_GRAPH)
    spectrum = level_spectrum(graph)
    poles = 1.0 * spectrum.energies
    rows = []
    for e in np.linspace(-1.5, 9.5, 1101):
        if np.min(np.abs(poles - e)) < 0.01:
            continue
        rows.append([float(e), secular_value(spectrum, 1.0, float(e))])
    _emit_table(cfg, "fig4_secular_2_4", ["energy", "secular_value"], rows, outputs)
    pole_rows = [[float(p), int(m)] for p, m in zip(poles, spectrum.multiplicities)]
    outputs.append(write_csv(os.path.join(cfg.output_dir, "fig4_poles_2_4.csv"),
                             ["pole_energy", "multiplicity"], pole_rows))
    return outputs


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwsearch",
        description="Spectral experiments for quantum-walk spatial search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=False, gamma=False):
        p.add_argument("--output-dir", default=os.environ.get(OUTPUT_DIR_ENV, "."))
        p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
        p.add_argument("--plot", choices=("none", "gnuplot", "svg"), default="none")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
        if graph:
            p.add_argument("--graph", required=True,
                           help="complete:<N> | hypercube:<n> | lattice:<d>:<L>")
        if gamma:
            p.add_argument("--gamma", type=float, required=True)

    common(sub.add_parser("constants", help="emit the analytic constant table"))
    common(sub.add_parser("spectrum", help="solve one rank-one spectrum"), graph=True, gamma=True)
    p = sub.add_parser("scan", help="gap and overlaps over a coupling window")
    common(p, graph=True)
    p.add_argument("--gamma-range", help="LO:HI, defaults to 0.5x..1.5x the scan center")
    p.add_argument("--points", type=int, default=101)
    p = sub.add_parser("evolve", help="success amplitude over time")
    common(p, graph=True, gamma=True)
    p.add_argument("--time-max", type=float)
    p.add_argument("--points", type=int, default=512, dest="time_points")
    p = sub.add_parser("critical", help="locate the critical coupling; lattice bound suites")
    common(p, graph=True)
    p.add_argument("--points", type=int, default=101)
    p = sub.add_parser("scaling", help="N-scaling study at the measured critical coupling")
    common(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--sides", required=True, help="comma-separated side lengths")
    common(sub.add_parser("validate", help="spectral path against the dense oracle"))
    common(sub.add_parser("figures", help="emit the standard figure datasets and plot scripts"))
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command,
                    output_dir=args.output_dir, fmt=args.fmt, plot=args.plot,
                    seed=args.seed, oracle_cap=args.oracle_cap)
    if hasattr(args, "graph"):
        cfg.graph = args.graph
    if hasattr(args, "gamma"):
        cfg.gamma = args.gamma
    if getattr(args, "gamma_range", None):
        lo, _, hi = args.gamma_range.partition(":")
        try:
            cfg.gamma_lo, cfg.gamma_hi = float(lo), float(hi)
        except ValueError as exc:
            raise GraphSpecError(f"bad --gamma-range {args.gamma_range!r}") from exc
    if hasattr(args, "points"):
        cfg.points = args.points
    if hasattr(args, "time_max"):
        cfg.time_max = args.time_max
    if hasattr(args, "time_points"):
        cfg.time_points = args.time_points
    if hasattr(args, "dim"):
        cfg.dim = args.dim
    if hasattr(args, "sides"):
        try:
            cfg.sides = tuple(int(s) for s in args.sides.split(","))
        except ValueError as exc:
            raise GraphSpecError(f"bad --sides {args.sides!r}") from exc
    return cfg


_HANDLERS = {
    "constants": _cmd_constants,
    "spectrum": _cmd_spectrum,
    "scan": _cmd_scan,
    "evolve": _cmd_evolve,
    "critical": _cmd_critical,
    "scaling": _cmd_scaling,
    "validate": _cmd_validate,
    "figures": _cmd_figures,
}


def _error_json(kind: str, exc: BaseException) -> str:
    return json.dumps({"error": {"type": kind, "class": type(exc).__name__,
                                 "message": str(exc)}}, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (GraphSpecError, ValueError) as exc:
        print(_error_json("config", exc), file=sys.stderr)
        return 2
    try:
        outputs = _HANDLERS[cfg.command](cfg)
    except (GraphSpecError,) as exc:
        print(_error_json("config", exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(_error_json("config", exc), file=sys.stderr)
        return 2
    except Exception as exc:
        print(_error_json("computation", exc), file=sys.stderr)
        return 3
    _write_manifest(cfg, outputs)
    for path in outputs:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
