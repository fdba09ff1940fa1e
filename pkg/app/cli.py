########################
#  Command-Line Driver #
########################

import argparse
import logging
from pathlib import Path
import sys
from typing import List, Optional

from app.commands import CommandFactory, RunConfig
from app.exceptions import ConfigurationError, ParseError, TeqError, ValidationError
from app.history import LoggingObserver, ReportObserver
from app.input_validators import InputValidator
from app.teq_config import TeqConfig
from app.toolchain import Toolchain

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one sub-parser per command."""
    parser = argparse.ArgumentParser(
        prog="teq",
        description="Check, erase, evaluate and translate annotated programs; check W' proofs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("files", nargs="+", type=Path, help="input files, processed in order")
        sub.add_argument("--report", type=Path, default=None, help="write a CSV report of all results")
        return sub

    check = add("check", "typecheck every check directive")
    check.add_argument("--effect", default=None, help="override the effect of each directive (! or ?)")
    check.add_argument("--fuel", default=None, help="reduction bound for join")

    evaluate = add("eval", "erase and evaluate every eval directive")
    evaluate.add_argument("--fuel", default=None, help="reduction bound")

    add("erase", "print the erasure of every definition")

    translate = add("translate", "emit the W' obligation of every obligation directive")
    translate.add_argument("--output", type=Path, default=None, help="obligation file (default: FILE.obl)")
    translate.add_argument("--fuel", default=None, help="reduction bound for join")

    wp_check = add("wp-check", "check W' proof scripts")
    wp_check.add_argument("--fuel", default=None, help="reduction bound for opsem steps")

    history = subparsers.add_parser("history", help="show the results stored in saved reports")
    history.add_argument("files", nargs="*", type=Path, help="report files (default: the configured report)")

    # commands registered with the factory at run time get the common options
    for name in CommandFactory.names():
        if name not in subparsers.choices:
            add(name, f"run the {name} command")
    return parser


def run(argv: Optional[List[str]] = None, config: Optional[TeqConfig] = None) -> int:
    """
    Run the driver.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` when omitted.
        config: Settings; loaded from the environment when omitted.

    Returns:
        int: 0 on success, 1 if a check or proof failed, 2 on a usage,
        parse or input error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = config or TeqConfig()
        toolchain = Toolchain(config)
        run_config = RunConfig(
            command=args.command,
            inputs=tuple(args.files),
            fuel=InputValidator.validate_fuel(getattr(args, "fuel", None), config),
            effect=(InputValidator.validate_effect(args.effect)
                    if getattr(args, "effect", None) is not None else None),
            output=getattr(args, "output", None),
            report=getattr(args, "report", None),
        )
        toolchain.add_observer(LoggingObserver())
        if run_config.report is not None:
            toolchain.report_file = run_config.report
            toolchain.add_observer(ReportObserver(toolchain))

        command = CommandFactory.create_command(run_config.command)
        logging.info(f"Running {command} on {len(run_config.inputs)} file(s)")
        status = command.execute(toolchain, run_config)
        if run_config.report is not None:
            toolchain.save_report()
        return status
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ConfigurationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RecursionError:
        logging.error("Input nested too deeply for the checker")
        print("error: input is nested too deeply to process", file=sys.stderr)
        return EXIT_USAGE
    except TeqError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
