"""
Main entry point for the ppgroup command line.
- Loads configuration from ppgroup.config (environment, logging).
- Builds the argparse surface from the routers in the ppgroup.handlers package.
- cli_main(argv) dispatches to the selected handler and returns its exit code.
"""
import argparse
import logging
import sys
from typing import List, Optional

from ppgroup import config as global_config
from ppgroup.handlers import checks_router, words_router
from ppgroup.handlers.routing import EXIT_USAGE

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so cli_main can return 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ValueError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppgroup", description="Words, diagrams and the word problem for a piecewise projective group.")
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)
    subparsers.required = True
    words_router.include_into(subparsers)
    checks_router.include_into(subparsers)
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    """
    Parses argv and runs one command.

    Returns:
        0 on success or identity, 1 for a negative decide/equal answer,
        2 on usage or parse errors, 3 when a cross-check fails.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.debug(f"Running {args.command} (log level {global_config.LOG_LEVEL_STR}).")
    return args.handler(args)


if __name__ == "__main__":
    try:
        sys.exit(cli_main())
    except KeyboardInterrupt:
        logger.info("Interrupted by user.")
        sys.exit(130)
    except Exception as e:
        logger.critical(f"Critical error during command execution: {e}", exc_info=True)
        sys.exit(1)
