# main.py
"""
Main Application

This is the entry point of the command line. It collects the verbs registered
in the commands package, configures logging from the settings and the -v flag,
and maps the outcome of each verb onto the exit code:
0 for success, true or PASS; 1 for false, FAIL or a semantic error;
2 for unreadable input or bad usage.
"""

import argparse
import logging
import sys

from commands import load_commands
from models.errors import DimensionMismatchError, ModuleParseError, TwoThreeError
from state import settings

LOGGER = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twothree",
        description="2-3 subcategories of finitely generated abelian groups",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    parser.add_argument("--quiet", action="store_true", help="suppress human-readable preambles")
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for command in load_commands().values():
        sub = verbs.add_parser(command.name, help=command.help, description=command.help)
        command.configure(sub)
        sub.set_defaults(run=command.run)
    return parser


def _configure_logging(verbose: int) -> None:
    level = settings.log_level - 10 * verbose
    logging.basicConfig(
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        level=max(level, logging.DEBUG),
        stream=sys.stderr,
        force=True,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 2

    _configure_logging(args.verbose)
    # Flags override the settings for this invocation only
    saved = dict(settings.data)
    try:
        return args.run(args)
    except (ModuleParseError, DimensionMismatchError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except TwoThreeError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    finally:
        settings.data = saved


if __name__ == "__main__":
    sys.exit(main())
