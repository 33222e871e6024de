"""
Decorator-based command registry for the command line.
- CommandRouter collects handlers under subcommand names.
- Routers are included into an argparse parser by ppgroup.main.
- Shared output helpers: plain text or deterministic JSON, and the exit codes.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CROSSCHECK = 3

Handler = Callable[[argparse.Namespace], int]
ArgumentSpec = Tuple[Tuple[Any, ...], Dict[str, Any]]


def argument(*names: Any, **options: Any) -> ArgumentSpec:
    """Arguments for parser.add_argument, kept until the router is included."""
    return names, options


@dataclass
class Command:
    name: str
    help: str
    handler: Handler
    arguments: List[ArgumentSpec] = field(default_factory=list)


class CommandRouter:
    def __init__(self, name: str):
        self.name = name
        self.commands: List[Command] = []

    def command(self, name: str, help: str, *arguments: ArgumentSpec) -> Callable[[Handler], Handler]:
        """
        Registers the decorated function as the handler of subcommand `name`.

        Args:
            name: Subcommand name, e.g. "decide".
            help: One-line description for --help.
            arguments: Specs built with argument(...).

        Returns:
            The decorator; the function itself is returned unchanged.
        """
        def decorator(handler: Handler) -> Handler:
            self.commands.append(Command(name, help, handler, list(arguments)))
            return handler
        return decorator

    def include_into(self, subparsers: "argparse._SubParsersAction") -> None:
        for command in self.commands:
            parser = subparsers.add_parser(command.name, help=command.help, description=command.help)
            for names, options in command.arguments:
                parser.add_argument(*names, **options)
            parser.add_argument("--json", action="store_true", help="print machine-readable JSON")
            parser.set_defaults(handler=command.handler)
        logger.debug(f"Router {self.name} registered {len(self.commands)} commands.")


def emit(args: argparse.Namespace, payload: Dict[str, Any], text: str) -> None:
    """Prints `payload` as sorted JSON under --json, `text` otherwise."""
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def report_error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)
