"""Command-line entry point: ``hamperc <subcommand> [options]``.

Exit codes: 0 success, 2 configuration error, 3 resource guard hit for at
least one grid point, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .. import __version__
from ..exploration import step2_escape_bound, step3_starvation_bound
from ..graph import GraphParams
from ..percolation import DEFAULT_MAX_VERTICES, PercolationParam
from ..theory import (alpha_parameter, expected_isolated, factorial_moment_bounds, hyperplane_window,
                      predicted_connectivity)
from .config import ConfigError, ExperimentConfig, parse_graphs, parse_grid, resolve_seed
from .records import ResultRecord, SummaryRow, emit, write_rows
from .runner import run_experiment
from .stats import summarize

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_IO = 0, 2, 3, 4

SUBCOMMANDS = {
    "sweep": ("connectivity-sweep", "connectivity over a grid of window values"),
    "poisson": ("poisson-check", "distribution of the isolated-vertex count"),
    "hyperplanes": ("hyperplane-check", "per-direction hyperplane connectivity and event B"),
    "explore": ("exploration-check", "exploration-process statistics conditioned on B_R(j)"),
    "oracle": ("oracle-check", "Monte Carlo against exact enumeration on tiny graphs"),
}


def _add_grid_options(p: argparse.ArgumentParser):
    p.add_argument("--d", default="2", help="dimension, or comma-separated list")
    p.add_argument("--n", default="100", help="side length, or comma-separated list (paired with --d)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--t", help="window value(s) t = lambda - d log n, comma-separated")
    g.add_argument("--t-grid", help="t grid lo:hi:step (inclusive)")
    g.add_argument("--lambda", dest="lam", help="expected occupied degree value(s)")
    g.add_argument("--p", help="retention probability value(s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamperc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in SUBCOMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _add_grid_options(p)
        p.add_argument("--reps", type=int, default=100)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--alpha", type=float, default=None,
                       help="threshold fraction for B events (default: limit hyperplane connectivity - eps)")
        p.add_argument("--eps", type=float, default=0.1)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
        p.add_argument("--out", type=Path, default=None, help="record file (summary goes to stdout)")
        p.add_argument("--summary-out", type=Path, default=None)
        p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
        p.add_argument("--mu-rule", choices=("limit", "exact"), default="limit",
                       help="Poisson rate: exp(-t) or the exact finite-size mean")
        p.add_argument("--timing", action="store_true", help="include wall_time in record output")
    p = sub.add_parser("predict", help="print closed-form predictions")
    _add_grid_options(p)
    p.add_argument("--eps", type=float, default=0.1)
    return parser


def _grid(args) -> tuple[str, tuple[float, ...]]:
    if args.t_grid:
        return "t", parse_grid(args.t_grid)
    if args.lam:
        return "lambda", parse_grid(args.lam)
    if args.p:
        return "p", parse_grid(args.p)
    return "t", parse_grid(args.t or "0")


def _config(args) -> ExperimentConfig:
    kind = SUBCOMMANDS[args.command][0]
    param, grid = _grid(args)
    seed, source = resolve_seed(args.seed)
    return ExperimentConfig(kind=kind, graphs=parse_graphs(args.d, args.n), grid=grid, param=param,
                            reps=args.reps, seed=seed, workers=args.workers, alpha=args.alpha,
                            eps=args.eps, max_vertices=args.max_vertices, seed_source=source)


def _predict(args) -> int:
    param, grid = _grid(args)
    for d, n in parse_graphs(args.d, args.n):
        graph = GraphParams(d, n)
        for value in grid:
            pp = PercolationParam(graph, param, value)
            row = {"d": d, "n": n, "lambda": pp.lam, "p": pp.p, "t": pp.t,
                   "predicted_connectivity": predicted_connectivity(pp.t),
                   "limit_mean_isolated": math.exp(-pp.t),
                   "exact_mean_isolated": expected_isolated(graph, pp.p)}
            bounds = []
            for r in (1, 2, 3):
                if r <= n:
                    b = factorial_moment_bounds(r, graph, pp.lam)
                    bounds.append({"r": r, "lower": b.lower, "upper": b.upper})
            row["factorial_moment_bounds"] = bounds
            if d >= 2:
                row["hyperplane_window"] = hyperplane_window(pp.t, d)
                try:
                    alpha = alpha_parameter(pp.t, d, args.eps)
                    row["alpha"] = alpha
                    if alpha * n <= graph.degree:
                        row["step2_escape_bound"] = step2_escape_bound(alpha, pp.lam, graph.degree, n)
                except ValueError:
                    row["alpha"] = None
            try:
                row["step3_starvation_bound_k1"] = step3_starvation_bound(1, pp.lam, graph)
            except ValueError:
                pass
            print(json.dumps(row))
    return EXIT_OK


def _print_summary(rows: list[SummaryRow]):
    cols = ("grid_index", "d", "n", "t", "records", "p_connected", "ci_low", "ci_high", "predicted",
            "mean_Y", "mu", "tv_poisson", "B_freq", "reference")
    print("\t".join(cols))
    for row in rows:
        vals = []
        for c in cols:
            v = getattr(row, c)
            vals.append("" if v is None else f"{v:.6g}" if isinstance(v, float) else str(v))
        print("\t".join(vals))


def _write_meta(config: ExperimentConfig, out: Path, status: str):
    meta = {"version": __version__, "status": status, "config": config.to_dict(),
            "master_seed": config.seed, "seed_source": config.seed_source}
    out.with_name(out.name + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "predict":
            return _predict(args)
        config = _config(args)
    except (ConfigError, ValueError, OverflowError) as exc:
        print(f"hamperc: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    records: list[ResultRecord] = []
    fh = None
    try:
        if args.out is not None:
            fh = args.out.open("w", newline="", encoding="utf-8")
            if args.format == "csv":
                write_rows(fh, [], "csv", cls=ResultRecord, include_timing=args.timing, header=True)
        for rec in run_experiment(config):
            records.append(rec)
            if fh is not None:
                write_rows(fh, [rec], args.format, cls=ResultRecord, include_timing=args.timing)
        if fh is not None:
            fh.close()
            fh = None
            _write_meta(config, args.out, "complete")
        rows = summarize(records, mu_rule=args.mu_rule)
        if args.summary_out is not None:
            emit(rows, args.format, args.summary_out, cls=SummaryRow)
    except OSError as exc:
        print(f"hamperc: I/O error: {exc}", file=sys.stderr)
        if fh is not None:
            try:
                fh.close()
                _write_meta(config, args.out, f"partial: {len(records)} records written before error")
            except OSError:
                pass
        return EXIT_IO
    _print_summary(rows)
    if any(r.error for r in records):
        print("hamperc: some grid points exceeded the resource guard; see error column", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
