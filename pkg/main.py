"""
main.py

Main entry point for the spinor peeling lab.
Runs one verification suite or experiment per subcommand, writes CSV tables
and a summary, and exits 0 iff every report passed (1 on a failed suite,
2 on a configuration error).
"""

import argparse
import logging
import os
import sys

from config import WORKERS_ENV_VAR
from src.core.errors import ConfigError, PeelingLabError
from src.core.run_config import COMMANDS, RunConfig
from src.cli.suites import run_command

from analysis.report_writer import prepare_output_dir, write_results

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def setup_logging(verbose=False):
    """Configure logging format for the application."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s")


def build_parser():
    """Argument parser with one subcommand per suite."""
    parser = argparse.ArgumentParser(description="Spinor peeling lab: identity suites and decay experiments")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        sub.add_argument("--config", help="INI ([run] section) or JSON config file.")
        sub.add_argument("--out", dest="out_dir", help="Output directory for CSV and summary.")
        sub.add_argument("--trials", type=int, help="Random trials per suite.")
        sub.add_argument("--seed", type=int, help="First seed.")
        sub.add_argument("--spin-max", dest="spin_max", help="Largest spin, e.g. 4 or 7/2.")
        sub.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
        if command in ("peel", "hertz-roundtrip"):
            sub.add_argument("--spin", dest="spins", help="Comma-separated spins, e.g. 1/2,1.")
        if command == "peel":
            sub.add_argument("--delta", dest="deltas", help="Comma-separated non-integer weights.")
    return parser


def run(argv=None):
    """
    Parse arguments, run the suite and write its artifacts.

    Returns:
        Exit status
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    overrides = {
        "command": args.command,
        "out_dir": args.out_dir,
        "trials": args.trials,
        "seed": args.seed,
        "spin_max": args.spin_max,
        "spins": getattr(args, "spins", None),
        "deltas": getattr(args, "deltas", None),
    }
    try:
        cfg = RunConfig.load(args.config, overrides)
        prepare_output_dir(cfg.out_dir)
    except ConfigError as exc:
        logging.error(f"Configuration error: {exc}")
        return EXIT_CONFIG

    if WORKERS_ENV_VAR not in os.environ:
        os.environ[WORKERS_ENV_VAR] = str(cfg.workers)

    try:
        result = run_command(cfg)
    except ConfigError as exc:
        logging.error(f"Configuration error: {exc}")
        return EXIT_CONFIG
    except PeelingLabError as exc:
        logging.error(f"{cfg.command} aborted: {exc}")
        return EXIT_FAILED

    write_results(result, cfg.out_dir)
    for report in result.reports:
        if not report.passed:
            logging.error(report.summary_line())
    if result.passed:
        logging.info(f"{cfg.command}: all {len(result.reports)} suites passed")
        return EXIT_OK
    logging.error(f"{cfg.command}: {sum(not r.passed for r in result.reports)} suites failed")
    return EXIT_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
