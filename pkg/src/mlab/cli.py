"""Command line front end.

    mlab run <experiment> --config cfg.json [--seed N] [--out report.json]
             [--csv rows.csv] [--threads K]
    mlab list
    mlab validate --config cfg.json

Exit codes: 0 all verdicts pass, 1 any verdict fails, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import lab
from .lab import ConfigError
from .probes import ProbeConfig


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlab",
        description="Desk-scale experiments for Lp->Lq Fourier multiplier operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one experiment from a JSON config")
    run_p.add_argument("experiment", choices=lab.EXPERIMENT_NAMES)
    run_p.add_argument("--config", required=True, help="JSON config file")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the master seed")
    run_p.add_argument("--out", default=None, help="write the JSON report here")
    run_p.add_argument("--csv", default=None, help="write the instance rows as CSV")
    run_p.add_argument("--threads", type=int, default=None,
                       help="worker hint; results are identical for any value")

    sub.add_parser("list", help="list experiments and their parameter schemas")

    val_p = sub.add_parser("validate", help="validate a config file")
    val_p.add_argument("--config", required=True)
    val_p.add_argument("--experiment", default=None, choices=lab.EXPERIMENT_NAMES)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "list":
        print(json.dumps(lab.catalog(), indent=2))
        return 0

    if args.command == "validate":
        try:
            cfg = lab.validate_config(_load_config(args.config), args.experiment)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
        print(f"valid config for experiment {cfg.name!r}")
        return 0

    # run
    try:
        raw = _load_config(args.config)
        cfg = lab.validate_config(raw, args.experiment)
        if args.seed is not None:
            cfg = replace(cfg, probe=replace(cfg.probe, master_seed=args.seed))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = lab.run(cfg)
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    for v in report.verdicts:
        status = "PASS" if v["passed"] else "FAIL"
        print(f"[{status}] {report.experiment}/{v['criterion']}: {v['detail']}")
    if not args.out:
        print(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
