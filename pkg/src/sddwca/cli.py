"""Command-line front end: single runs, parameter sweeps, counting audits."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from multiprocessing import Pool
from typing import Optional, Sequence

from .audit import run_formation_audits, run_maintenance_audits
from .config import ConfigError, ScenarioConfig, load_config
from .engine import run_scenario
from .reporting import summary_row, write_series_csv, write_summary_csv

SWEEP_AXES = {"n": int, "range": float, "vmax": float}
_AXIS_FIELDS = {"n": "n", "range": "range_m", "vmax": "vmax"}


def _parse_terrain(text: str) -> tuple[float, float]:
    sep = "x" if "x" in text else ","
    parts = text.split(sep)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}")
    return float(parts[0]), float(parts[1])


def parse_seeds(text: str) -> list[int]:
    """Seed lists: either comma separated or an inclusive 'a..b' span."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in text.split(",") if s]


def _parse_values(text: str, axis: str) -> list:
    cast = SWEEP_AXES[axis]
    values = [cast(v) for v in text.split(",") if v]
    if not values:
        raise argparse.ArgumentTypeError("need at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sddwca",
        description="Round-based simulator for strong-degree weighted clustering "
        "of mobile ad hoc networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="scenario file (YAML); flags override it")
        p.add_argument("--n", type=int, help="number of nodes")
        p.add_argument("--terrain", type=_parse_terrain, help="terrain, e.g. 750x750")
        p.add_argument("--vmax", type=float, help="maximum node speed, m/s")
        p.add_argument("--range", dest="range_m", type=float, help="transmission range, m")
        p.add_argument("--pt", dest="pause", type=float, help="waypoint pause time, s")
        p.add_argument("--ie", dest="initial_energy", type=float, help="initial energy, J")
        p.add_argument("--t", dest="sim_time", type=int, help="simulation time, s")
        p.add_argument("--bi", type=int, help="hello broadcast interval, rounds")
        p.add_argument("--seed", type=int, help="rng seed")
        p.add_argument(
            "--out",
            default=None,
            help="output directory (default: $SDDWCA_OUT or ./out)",
        )

    p_run = sub.add_parser("run", help="run one scenario, write trace and CSVs")
    add_scenario_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep, extend the summary CSV")
    add_scenario_flags(p_sweep)
    p_sweep.add_argument("--axis", choices=sorted(SWEEP_AXES), required=True)
    p_sweep.add_argument("--values", required=True, help="comma separated axis values")
    p_sweep.add_argument("--seeds", default="1", help="comma list or span like 1..10")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    p_audit = sub.add_parser(
        "audit", help="run counting audits; nonzero exit on any mismatch"
    )
    p_audit.add_argument(
        "--cases", choices=["all", "formation", "maintenance"], default="all"
    )
    p_audit.add_argument(
        "--n", default="5,20,50", help="node counts for the static formation audit"
    )
    p_audit.add_argument("--t", dest="sim_time", type=int, default=10)
    return parser


_OVERRIDE_FIELDS = (
    "n",
    "terrain",
    "vmax",
    "range_m",
    "pause",
    "initial_energy",
    "sim_time",
    "bi",
    "seed",
)


def _config_from_args(args: argparse.Namespace) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    overrides = {
        name: getattr(args, name)
        for name in _OVERRIDE_FIELDS
        if getattr(args, name, None) is not None
    }
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg.validate()


def _out_dir(args: argparse.Namespace) -> str:
    out = args.out or os.environ.get("SDDWCA_OUT") or "out"
    os.makedirs(out, exist_ok=True)
    return out


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    out = _out_dir(args)
    result = run_scenario(cfg)
    result.trace.write(os.path.join(out, "trace.csv"))
    write_series_csv(result.world.sampler.rows, os.path.join(out, "series.csv"))
    write_summary_csv([summary_row(cfg, result.report)], os.path.join(out, "summary.csv"))
    rep = result.report
    print(
        f"n={cfg.n} range={cfg.range_m:g} vmax={cfg.vmax:g} seed={cfg.seed} "
        f"avg_clusters={rep.avg_clusters:.2f} reaff_rate={rep.reaffiliations_per_second:.4f} "
        f"outcome={rep.outcome.value} "
        f"msgs(hello/formation/maintenance)={rep.overhead.hello}/"
        f"{rep.overhead.formation}/{rep.overhead.maintenance}"
    )
    print(f"wrote {out}/trace.csv {out}/series.csv {out}/summary.csv")
    return 0


def _sweep_one(job: tuple[ScenarioConfig, str, object, int]) -> dict[str, str]:
    base, axis, value, seed = job
    cfg = replace(base, seed=seed, **{_AXIS_FIELDS[axis]: value})
    result = run_scenario(cfg)
    return summary_row(cfg, result.report)


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _config_from_args(args)
    out = _out_dir(args)
    values = _parse_values(args.values, args.axis)
    seeds = parse_seeds(args.seeds)
    jobs = [(base, args.axis, value, seed) for value in values for seed in seeds]
    if args.workers > 1:
        with Pool(args.workers) as pool:
            rows = pool.map(_sweep_one, jobs)
    else:
        rows = [_sweep_one(job) for job in jobs]
    order = {
        (str(value), str(seed)): idx
        for idx, (value, seed) in enumerate(
            (value, seed) for value in sorted(values) for seed in sorted(seeds)
        )
    }
    key = _AXIS_FIELDS[args.axis] if args.axis != "range" else "range_m"
    rows.sort(key=lambda row: order[(row[key], row["seed"])])
    path = os.path.join(out, "summary.csv")
    write_summary_csv(rows, path, append=True)
    print(f"{len(rows)} runs appended to {path}")
    return 0


def _cmd_audit(args: argparse.Namespace) -> int:
    audits = []
    if args.cases in ("all", "formation"):
        sizes = tuple(int(v) for v in str(args.n).split(","))
        audits.extend(run_formation_audits(sizes, sim_time=args.sim_time))
    if args.cases in ("all", "maintenance"):
        audits.extend(run_maintenance_audits())
    failures = 0
    for audit in audits:
        status = "PASS" if audit.ok else "FAIL"
        print(f"{status} {audit.name}")
        for line in audit.result.lines():
            print(f"    {line}")
        if not audit.ok:
            failures += 1
    print(f"{len(audits) - failures}/{len(audits)} audits passed")
    return 0 if failures == 0 else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_audit(args)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
