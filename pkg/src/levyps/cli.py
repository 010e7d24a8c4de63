"""Command-line front end.

    levyps run --config exp.cfg --out results
    levyps echo-config --config exp.cfg
    levyps list-suites

`run` executes the selected suites, prints one line per check, and
writes report.json, one CSV per plot, and the matching PNG figures to
the output directory.  Exit status is 0 only if every check passed;
config and capacity problems exit with status 2 before any suite runs.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import time

from .config import (
    SUITE_NAMES,
    ExperimentConfig,
    default_config,
    effective_config_text,
    load_config,
)
from .errors import CapacityError, ConfigError
from .plots import render_plots
from .report import Report
from .suites import run_suites


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levyps",
        description="Verification suites for truncated Levy-process product systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute suites and write the report")
    echo_p = sub.add_parser("echo-config", help="print the canonical effective config")
    sub.add_parser("list-suites", help="print available suite names")

    for p in (run_p, echo_p):
        p.add_argument("--config", metavar="PATH", help="config file (defaults apply if omitted)")
        p.add_argument("--seed", type=int, metavar="N", help="override the config seed")
        p.add_argument("--suite", metavar="NAME", help="override the suite selection")
    run_p.add_argument("--out", metavar="DIR", help="override the output directory")
    return parser


def _effective_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else default_config()
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if args.suite is not None:
        if args.suite != "all" and args.suite not in SUITE_NAMES:
            raise ConfigError(f"unknown suite {args.suite!r}", key="suite")
        cfg = dataclasses.replace(cfg, suite=args.suite)
    if getattr(args, "out", None) is not None:
        cfg = dataclasses.replace(cfg, out=args.out)
    return cfg


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(x) if isinstance(x, float) else str(x) for x in row) + "\n")


def _run(args) -> int:
    cfg = _effective_config(args)
    names = SUITE_NAMES if cfg.suite == "all" else (cfg.suite,)

    start = time.perf_counter()
    records, plots = run_suites(cfg, names)
    wall = time.perf_counter() - start

    report = Report(effective_config_text(cfg), records, wall)
    os.makedirs(cfg.out, exist_ok=True)
    with open(os.path.join(cfg.out, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    for name, (header, rows) in plots.items():
        _write_csv(os.path.join(cfg.out, f"{name}.csv"), header, rows)
    render_plots(plots, cfg.out, cfg.tol_sigma)

    for record in records:
        print(record.format_line())
    failed = [r for r in records if not r.passed]
    summary = report.summary()
    print(f"{summary['passed']}/{summary['total']} checks passed in {wall:.1f}s -> {cfg.out}/")
    if failed:
        print("FAILED: " + ", ".join(f"{r.suite}/{r.check}" for r in failed))
        return 1
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-suites":
            for name in SUITE_NAMES:
                print(name)
            return 0
        if args.command == "echo-config":
            sys.stdout.write(effective_config_text(_effective_config(args)))
            return 0
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
