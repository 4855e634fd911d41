"""Command line interface.

Commands::

    contactlab census --config radial.json
    contactlab verify --suite all
    contactlab graph-check --config radial.json --k 2

The exit status is 0 when every invariant of the run passed, 1 when some
failed and 2 on invalid input.
"""

import argparse
import logging
import sys
from typing import List, Optional

import pandas as pd

from contactlab.contactlab_logger import start_logging
from contactlab.exceptions import ValidationError
from contactlab.experiments.config import load_config
from contactlab.experiments.runner import run_census, run_graph_check
from contactlab.experiments.verify import SUITES, run_verify

logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="contactlab",
        description="Translated points of contactomorphisms: census, invariant suites "
        "and Legendrian graph checks.",
    )
    parser.add_argument(
        "--log-level", default="INFO", help="logging level (name or number, default INFO)"
    )
    parser.add_argument(
        "--no-progress", action="store_true", help="do not show solver progress bars"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    census = commands.add_parser("census", help="run the iterated census of a config")
    census.add_argument("--config", required=True, help="path to a JSON config")

    verify = commands.add_parser("verify", help="run invariant suites")
    verify.add_argument("--suite", required=True, help=f"one of: {', '.join(SUITES)}")
    verify.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    verify.add_argument(
        "--steps-per-unit", type=_positive, default=None, help="integrator steps per unit time"
    )

    graph = commands.add_parser("graph-check", help="check the Legendrian graph of phi^k")
    graph.add_argument("--config", required=True, help="path to a JSON config")
    graph.add_argument("--k", type=_positive, required=True, help="iterate")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface and return the exit status."""
    args = build_parser().parse_args(argv)
    try:
        level = args.log_level
        start_logging(int(level) if level.isdigit() else level)
    except ValueError as exception:
        print(f"contactlab: {exception}", file=sys.stderr)
        return EXIT_INVALID
    progress = not args.no_progress

    try:
        if args.command == "census":
            run = run_census(load_config(args.config), progress=progress)
            passed = run.passed
        elif args.command == "graph-check":
            run = run_graph_check(load_config(args.config), args.k, progress=progress)
            passed = run.passed
        else:
            kwargs = {"seed": args.seed}
            if args.steps_per_unit:
                kwargs["steps_per_unit"] = args.steps_per_unit
            report = run_verify(args.suite, **kwargs)
            with pd.option_context("display.max_rows", None, "display.width", 120):
                print(report.summary.to_string(index=False))
            passed = report.passed
    except ValidationError as exception:
        logger.error("%s", exception)
        return EXIT_INVALID

    return EXIT_PASSED if passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
