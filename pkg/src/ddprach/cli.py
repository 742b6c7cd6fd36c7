"""Command-line entry point.

Subcommands
-----------
simulate        single run at the configured operating point
cdf-sweep       error CDF per (scheme, subcarrier spacing)
speed-tradeoff  ranging RMSE vs speed next to tilt and propulsion power
tilt-sweep      ranging RMSE and LoS point counts vs forced antenna tilt
validate-config parse + echo the canonical form of a config file

Exit codes: 0 success, 2 config error, 3 data error (e.g. malformed taps
file).  All outputs are CSVs written under ``--out`` (default: cwd).
"""

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

from .channel import TapFileError
from .config import ConfigError, load_config, serialize_config
from .experiments import (
    run_cdf_sweep,
    run_simulate,
    run_speed_tradeoff,
    run_tilt_sweep,
    summarize,
)
from .metrics import write_results_csv

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddprach",
        description="Delay-Doppler PRACH ranging experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("simulate", "run the configured scenario once"),
        ("cdf-sweep", "error CDF per subcarrier spacing"),
        ("speed-tradeoff", "RMSE vs speed with tilt and propulsion power"),
        ("tilt-sweep", "RMSE and LoS counts vs forced antenna tilt"),
        ("validate-config", "check a config file and print its canonical form"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to YAML config")
        if name != "validate-config":
            cmd.add_argument("--seed", type=int, help="override config seed")
            cmd.add_argument("--out", default=".", help="output directory")
            cmd.add_argument(
                "--threads", type=int, default=1, help="worker threads"
            )
    return parser


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def _write_rows(path: Path, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(row[key]) for key in header])


def _print_summary(summary: dict) -> None:
    for scheme, entry in summary.items():
        parts = [f"{scheme}: detection_rate={entry['detection_rate']:.4f}"]
        if "rmse_m" in entry:
            parts.append(f"rmse_m={entry['rmse_m']:.6g}")
        if "mean_abs_error_m" in entry:
            parts.append(f"mean_abs_error_m={entry['mean_abs_error_m']:.6g}")
        print("  ".join(parts))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate-config":
        print(serialize_config(cfg), end="")
        return 0

    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        if args.command == "simulate":
            records = run_simulate(cfg, threads=args.threads)
            write_results_csv(out_dir / "results.csv", records)
            _print_summary(summarize(records))
            print(f"wrote {out_dir / 'results.csv'}")
        elif args.command == "cdf-sweep":
            rows = run_cdf_sweep(cfg, threads=args.threads)
            _write_rows(
                out_dir / "cdf.csv",
                ["scheme", "delta_f_hz", "abs_error_m", "cdf"],
                rows,
            )
            print(f"wrote {out_dir / 'cdf.csv'}")
        elif args.command == "speed-tradeoff":
            rows = run_speed_tradeoff(cfg, threads=args.threads)
            header = ["speed_mps", "tilt_deg", "power_w"]
            header += [f"rmse_{s}_m" for s in cfg.schemes]
            _write_rows(out_dir / "speed_tradeoff.csv", header, rows)
            print(f"wrote {out_dir / 'speed_tradeoff.csv'}")
        elif args.command == "tilt-sweep":
            rows = run_tilt_sweep(cfg, threads=args.threads)
            header = [
                "tilt_deg",
                "n_los_geometric",
                "last_los_index",
                "n_los_tagged",
            ]
            header += [f"rmse_{s}_m" for s in cfg.schemes]
            _write_rows(out_dir / "tilt_sweep.csv", header, rows)
            print(f"wrote {out_dir / 'tilt_sweep.csv'}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (TapFileError, FileNotFoundError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
