"""
Main application file for the Morse group engine
Builds the command tree, applies flag overrides to CFG and writes JSON
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from config import CFG
from exceptions import MorseError
from handlers import setup_algebra_handlers, setup_numerics_handlers
from logger import Logger
from reports import documents, errors, help_msgs

# Error kinds that mean the input was unusable
USAGE_KINDS = {"partition", "braid", "color", "size", "config", "geometry"}

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

# Flags whose values may start with a minus sign
SIGNED_VALUE_FLAGS = ("--lambdas", "--us", "--braid", "--colored-braid")


def common_options() -> argparse.ArgumentParser:
    """Flags every subcommand accepts"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--tau", type=float, help="scale of the critical values (slice and tracker)")
    parser.add_argument("--tol", type=float, help="residual tolerance for floating checks")
    parser.add_argument("--seed", type=int, help="seed for sampled configurations")
    parser.add_argument("--out", help="write the JSON document to this file instead of stdout")
    parser.add_argument("--debug", action="store_true", default=None, help="DEBUG lines on stderr")
    return parser


def join_signed_values(argv: List[str]) -> List[str]:
    """'--lambdas -1,1' -> '--lambdas=-1,1' so argparse does not read the value as a flag"""
    joined, i = [], 0
    while i < len(argv):
        token = argv[i]
        if token in SIGNED_VALUE_FLAGS and i + 1 < len(argv):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            joined.append(token)
            i += 1
    return joined


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=CFG.app_name,
        description=help_msgs.get_description(),
        epilog=help_msgs.get_epilog(),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_options()]
    setup_algebra_handlers(subparsers, parents)
    setup_numerics_handlers(subparsers, parents)
    return parser


def run_config(args):
    """CFG with this run's flags applied"""
    return CFG.override(
        seed=args.seed,
        exact_tol=args.tol,
        slice_tau=args.tau,
        tracker_tau=args.tau,
        debug_mode=args.debug,
    )


def emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        Logger.log(f"wrote {out}", "DEBUG", "CLI")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(join_signed_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    cfg = run_config(args)
    problems = cfg.validate()
    if problems:
        for problem in problems:
            print(errors.get_error_message("config", problem), file=sys.stderr)
        return EXIT_USAGE

    saved = replace(CFG)
    CFG.apply(cfg)
    Logger.set_debug(CFG.debug_mode)
    try:
        body, passed = args.handler(args)
        emit(documents.dump(args.command, body), args.out)
    except MorseError as e:
        print(errors.get_error_message(e.kind, str(e)), file=sys.stderr)
        Logger.log(f"{args.command} stopped: {e}", "DEBUG", "CLI")
        return EXIT_USAGE if e.kind in USAGE_KINDS else EXIT_FAILED
    finally:
        CFG.apply(saved)
        Logger.set_debug(CFG.debug_mode)
    return EXIT_OK if passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
