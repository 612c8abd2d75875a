"""
Command line front end.

    python cli.py h2 --C Z2 --B Z2 --action trivial
    python cli.py torsors --B Z3 --json
    python cli.py verify two-group --max 3
    python cli.py baer first.json second.json

Exit codes: 0 pass, 1 suite failure or disagreement, 2 usage or parse
error, 3 enumeration budget exceeded.
"""

import argparse
import asyncio
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
load_dotenv()

from config import (
    DEFAULT_SUITE_MAX,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    LOG_FORMAT,
    LOG_LEVEL,
    MAX_CONCURRENT_JOBS,
)
from src.algebra.algebra_config import AlgebraConfig
from src.algebra.serialization import dump_json
from src.errors import InternalInconsistencyError, InvalidArgumentError, ResourceLimitError
from src.extensions.extensions import load_extension
from src.suites.reports import build_baer_report, build_h2_report, build_torsors_report
from src.suites.runner import run_suite
from src.suites.specs import parse_abelian_group, parse_action_spec, parse_finite_group

logger = logging.getLogger("cli")


def _positive_int(text: str) -> int:
    try:
        value = int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report instead of a table")
    common.add_argument("--budget", type=_positive_int, default=None,
                        help="enumeration budget (default: ENUMERATION_BUDGET)")
    common.add_argument("--max", dest="max_size", type=_positive_int, default=DEFAULT_SUITE_MAX,
                        help="largest group order or carrier in suite grids")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Extensions, torsors and opfibration checks over small finite groups",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    h2 = commands.add_parser("h2", parents=[common], help="compare pi0 of extensions with H2")
    h2.add_argument("--C", dest="C", default="Z1", help="acting group spec, e.g. Z2 or Z2xZ2")
    h2.add_argument("--B", dest="B", required=True, help="abelian group spec")
    h2.add_argument("--action", default="trivial", help="trivial, inv or @file.json")

    torsors = commands.add_parser("torsors", parents=[common], help="count torsors and their pi0/pi1")
    torsors.add_argument("--B", dest="B", required=True, help="group spec")

    verify = commands.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", help="oplax, adjoints, mates, groupal, torsor-char, two-group, ...")

    baer = commands.add_parser("baer", parents=[common], help="Baer tensor of two extension files")
    baer.add_argument("first", help="extension JSON file")
    baer.add_argument("second", help="extension JSON file")
    return parser


def _emit(report, as_json: bool):
    print(dump_json(report.to_dict()) if as_json else report.to_text())


def cmd_h2(args) -> int:
    C = parse_finite_group(args.C)
    B = parse_abelian_group(args.B)
    module = parse_action_spec(C, B, args.action)
    report = build_h2_report(module, args.action, args.budget)
    _emit(report, args.json)
    return EXIT_OK if report.agree else EXIT_FAILURE


def cmd_torsors(args) -> int:
    report = build_torsors_report(parse_finite_group(args.B), args.budget)
    _emit(report, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = asyncio.run(run_suite(args.suite, args.max_size, MAX_CONCURRENT_JOBS))
    _emit(report, args.json)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_baer(args) -> int:
    report = build_baer_report(load_extension(args.first), load_extension(args.second), args.budget)
    _emit(report, args.json)
    return EXIT_OK


COMMANDS = {"h2": cmd_h2, "torsors": cmd_torsors, "verify": cmd_verify, "baer": cmd_baer}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL, logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    previous_budget = AlgebraConfig.ENUMERATION_BUDGET
    if args.budget is not None:
        AlgebraConfig.ENUMERATION_BUDGET = args.budget

    try:
        return COMMANDS[args.command](args)
    except InvalidArgumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalInconsistencyError as e:
        logger.error(f"Internal inconsistency: {e}")
        return EXIT_FAILURE
    finally:
        AlgebraConfig.ENUMERATION_BUDGET = previous_budget


if __name__ == "__main__":
    sys.exit(main())
