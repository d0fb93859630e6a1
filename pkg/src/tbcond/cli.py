"""Command-line entry points.

Every paper-facing computation has a direct subcommand: band structure,
transmission curves, single-sample conductances, scaling scans, the N-fold
repetition study and the invariant verification suite.  Outputs are plain
CSV/JSON so any plotter can consume them; exit code 0 means every requested
computation succeeded (and, for ``verify``, every check passed).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .harness import (
    ConductanceReport,
    RunConfig,
    build_potential,
    build_reservoir,
    compute_row,
    emit,
    report_csv,
    report_json,
    resolve_lengths,
    scaling_scan,
    verify_suite,
)
from .numerics import ValidationError
from .periodic import band_edges, thouless_conductance
from .reservoirs import EnergyInterval
from .transport import (
    EBBConfig,
    clb_conductance,
    clb_transmission,
    lb_transmission,
    repeated_lb_conductance,
)


def _add_common(parser, config_required=True):
    parser.add_argument("--config", required=config_required, help="path to a JSON run config")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--tol", type=float, default=None, help="override quadrature tolerance")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--jobs", type=int, default=None, help="worker count for row-parallel runs")


def _load_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config)
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "jobs", None) is not None:
        overrides["jobs"] = args.jobs
    if overrides:
        cfg = RunConfig.from_dict({**cfg.to_dict(), **overrides})
    return cfg


def _single_length(cfg: RunConfig) -> int:
    return resolve_lengths(cfg)[0]


def _write(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _build_ebb(cfg: RunConfig, length: int) -> EBBConfig:
    sample = build_potential(cfg, length)
    left = build_reservoir(cfg.left, "l", sample, cfg.kappa)
    right = build_reservoir(cfg.right, "r", sample, cfg.kappa)
    return EBBConfig(sample, cfg.kappa, left, right)


def _cmd_bands(args) -> int:
    cfg = _load_config(args)
    sample = build_potential(cfg, _single_length(cfg))
    bs = band_edges(sample)
    if args.format == "json":
        _write(json.dumps(bs.to_json_dict(), indent=2) + "\n", args.out)
    else:
        lines = ["band,lo,hi,width"]
        lines += [f"{i},{b.lo!r},{b.hi!r},{b.width!r}" for i, b in enumerate(bs.bands, start=1)]
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_transmission(args) -> int:
    cfg = _load_config(args)
    ebb = _build_ebb(cfg, _single_length(cfg))
    lo, hi = cfg.interval
    energies = np.linspace(lo, hi, args.grid)
    rows = [(float(e), lb_transmission(ebb, float(e)), clb_transmission(ebb, float(e))) for e in energies]
    if args.format == "json":
        payload = [{"E": e, "T_LB": a, "T_CLB": b} for e, a, b in rows]
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["E,T_LB,T_CLB"] + [f"{e!r},{a!r},{b!r}" for e, a, b in rows]
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_conductance(args) -> int:
    cfg = _load_config(args)
    row = compute_row(cfg, _single_length(cfg))
    report = ConductanceReport(cfg, (row,))
    _write(report_json(report) if args.format == "json" else report_csv(report), args.out)
    return 0 if row.error is None else 1


def _cmd_scan(args) -> int:
    cfg = _load_config(args)
    report = scaling_scan(cfg)
    if args.out is not None:
        emit(report, args.format, args.out)
    else:
        _write(report_json(report) if args.format == "json" else report_csv(report), None)
    return 0 if report.ok else 1


def _cmd_repeat(args) -> int:
    cfg = _load_config(args)
    ebb = _build_ebb(cfg, _single_length(cfg))
    iv = EnergyInterval(*cfg.interval)
    g_clb = clb_conductance(ebb, iv, cfg.tol)
    rows = []
    running = []
    for n in range(args.n_min, args.n_max + 1):
        g = repeated_lb_conductance(ebb, n, iv, cfg.tol)
        running.append(g)
        window = running[-args.window :]
        rows.append((n, g, sum(window) / len(window), g_clb))
    if args.format == "json":
        payload = [
            {"N": n, "G_LB_N": g, "running_mean": m, "G_CLB": c} for n, g, m, c in rows
        ]
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = ["N,G_LB_N,running_mean,G_CLB"]
        lines += [f"{n},{g!r},{m!r},{c!r}" for n, g, m, c in rows]
        _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    results = verify_suite(scope=args.scope, seed=args.seed, jobs=args.jobs)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {status}  worst={r.worst:.3e}  {r.detail}")
    ok = all(r.passed for r in results)
    lines.append(f"{'overall':<{width}}  {'PASS' if ok else 'FAIL'}  ({len(results)} checks)")
    _write("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tbcond",
        description="Conductances of finite 1D tight-binding samples "
        "(two-reservoir, crystalline, and spectral-measure variants).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands", help="band edges of the periodized sample")
    _add_common(p)
    p.set_defaults(func=_cmd_bands)

    p = sub.add_parser("transmission", help="transmission curves over the config window")
    _add_common(p)
    p.add_argument("--grid", type=int, default=400, help="number of energy points")
    p.set_defaults(func=_cmd_transmission)

    p = sub.add_parser("conductance", help="all three conductances at one length")
    _add_common(p)
    p.set_defaults(func=_cmd_conductance)

    p = sub.add_parser("scan", help="scaling scan over the configured length sequence")
    _add_common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("repeat", help="N-fold repetition study against the crystalline value")
    _add_common(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=128)
    p.add_argument("--window", type=int, default=32, help="running-mean window size")
    p.set_defaults(func=_cmd_repeat)

    p = sub.add_parser("verify", help="run the invariant verification suite")
    p.add_argument("--scope", default="all", help="'all', 'trivial-only', or check names")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
