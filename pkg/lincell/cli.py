import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .command import Command
from .commands import COMMANDS
from .session import Session

PROG = "lincell"


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def add_command_parser(subparsers, command: Command):
    parser = subparsers.add_parser(
        command.name,
        help=command.description().split(" - ", 1)[-1].split(".")[0],
        description=command.description(),
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    for argument in command.schema.arguments.values():
        if argument.is_flag:
            parser.add_argument(_flag(argument.name), dest=argument.name, action="store_true",
                                help=argument.description)
        elif argument.positional:
            parser.add_argument(argument.name, type=argument.type, choices=argument.choices,
                                help=argument.description)
        else:
            parser.add_argument(_flag(argument.name), dest=argument.name, type=argument.type,
                                choices=argument.choices, default=None, required=argument.required,
                                help=argument.description)
    return parser


def build_parser() -> argparse.ArgumentParser:
    argparser = argparse.ArgumentParser(
        prog=PROG,
        description="Linear nine-neighbourhood cellular automata over GF(2) with null boundary"
    )
    argparser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    argparser.add_argument(
        "-w",
        "--working-dir",
        type=str,
        default=".",
        help="Working directory for relative paths and .lincell configuration"
    )
    argparser.add_argument(
        "--config",
        type=str,
        default=None,
        help="Config file (defaults to <working-dir>/.lincell/config.json when present)"
    )
    argparser.add_argument(
        "--log",
        type=str,
        default=None,
        help="Append a run log to this file"
    )
    argparser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug mode"
    )
    subparsers = argparser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command_class in COMMANDS:
        add_command_parser(subparsers, command_class())
    return argparser


def _command_input(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"command", "working_dir", "config", "log", "debug"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _write_stdout(payload: Any):
    if isinstance(payload, bytes):
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        sys.stdout.write(payload)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    working_dir = Path(args.working_dir)
    session = Session(
        working_dir,
        debug=args.debug,
        config_path=Path(args.config) if args.config else None,
        log_path=Path(args.log) if args.log else None,
    )
    try:
        session.initialize()
    except (OSError, ValueError) as e:
        print(f"{PROG}: error: {e}", file=sys.stderr)
        return 1

    result = session.run(args.command, _command_input(args))
    data = result.get("data")
    if isinstance(data, dict):
        if "stdout" in data:
            _write_stdout(data["stdout"])
        else:
            print(json.dumps(data, sort_keys=True, default=str))

    if not result.get("ok"):
        session.finish("failed")
        print(f"{PROG}: error: {result.get('error')}", file=sys.stderr)
        return 1
    session.finish("done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
