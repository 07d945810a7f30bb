#!/usr/bin/env python

"""
zonostrat.cli
~~~~~~~~~~~~~

Command-line front end of zonostrat.

"""

import argparse
import logging
import sys
from typing import List, Optional

from zonostrat.errors import VerificationFailure, ZonostratError
from zonostrat.report import Report, report_to_json
from zonostrat.zonostrat import Zonostrat

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILURE = 2


def build_parser() -> argparse.ArgumentParser:
    """Creates the argument parser with one subcommand per driver."""
    parser = argparse.ArgumentParser(
        prog="zonostrat",
        description="Half-open zonotopes and oriented toric arrangement strata.",
    )
    parser.add_argument("--config", default="", help="Path to a configuration JSON file.")
    parser.add_argument("--workers", type=int, default=None, help="Number of worker threads.")
    parser.add_argument("--log-level", default=None, help="Root log level name.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_instance_command(name: str, help_text: str) -> argparse.ArgumentParser:
        command = subparsers.add_parser(name, help=help_text)
        command.add_argument("file", help="Instance file.")
        command.add_argument(
            "--plain", action="store_true", help="Read one vector per line instead of JSON."
        )
        return command

    analyze = add_instance_command("analyze", "Enumerate strata and verify every check.")
    analyze.add_argument("--out", default="", help="Write the report to this path.")
    analyze.add_argument(
        "--paper-pi", action="store_true", help="Add points in the explicit π basis."
    )

    render = add_instance_command("render", "Write the SVG pictures.")
    render.add_argument("--dir", required=True, help="Directory for the SVG files.")

    oracle = add_instance_command("oracle", "Compare enumerations with independent oracles.")
    oracle.add_argument(
        "--strata-oracle", action="store_true", help="Also run brute-force strata."
    )
    oracle.add_argument("--out", default="", help="Write the report to this path.")

    theta = add_instance_command("theta", "Class group, Bondal-Thomsen collection and cone.")
    theta.add_argument("--out", default="", help="Write the report to this path.")

    restrict = add_instance_command("restrict", "Restrict to the face of one stratum.")
    restrict.add_argument(
        "--stratum", type=int, required=True, help="0-based stratum index in sorted order."
    )
    restrict.add_argument("--out", default="", help="Write the report to this path.")

    subparsers.add_parser("init", help="Copy the default configuration and examples here.")

    return parser


def _emit(report: Report, out: str) -> None:
    text = report_to_json(report)
    if out:
        with open(out, "w", encoding="utf-8") as report_file:
            report_file.write(text)
    else:
        sys.stdout.write(text)


def _run(args: argparse.Namespace) -> int:
    if args.command == "init":
        Zonostrat.initialize_folder()
        return EXIT_OK

    application = Zonostrat(args.config, workers=args.workers, log_level=args.log_level)

    if args.command == "render":
        for path in application.render(args.file, args.dir, plain=args.plain):
            sys.stdout.write(path + "\n")
        return EXIT_OK

    if args.command == "analyze":
        report = application.analyze(args.file, plain=args.plain, paper_pi=args.paper_pi)
    elif args.command == "oracle":
        report = application.oracle(args.file, strata_oracle=args.strata_oracle, plain=args.plain)
    elif args.command == "theta":
        report = application.theta(args.file, plain=args.plain)
    else:
        report = application.restrict(args.file, args.stratum, plain=args.plain)

    _emit(report, args.out)

    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """
    Runs one command.

    Returns:
        int: 0 on success, 1 on input errors, 2 on failed verifications
    """
    args = build_parser().parse_args(argv)

    try:
        return _run(args)
    except VerificationFailure as exception:
        logging.error("Verification failed: %s", exception)
        return EXIT_VERIFICATION_FAILURE
    except (ZonostratError, ValueError, OSError) as exception:
        logging.error("%s: %s", type(exception).__name__, exception)
        return EXIT_INPUT_ERROR
    except Exception:
        logging.exception("Unexpected failure.")
        raise


if __name__ == "__main__":
    sys.exit(main())
