"""Command-line entry point: `multiparty-qhe <command>` or `python -m multiparty_qhe`."""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from multiparty_qhe import settings
from multiparty_qhe.cli.base import BaseCommand, CommandError, ExitCode, OutputWrapper
from multiparty_qhe.cli.commands import paper_experiment, qber_demo, run, suite, verify

COMMANDS: dict[str, type[BaseCommand]] = {
    "run": run.Command,
    "verify": verify.Command,
    "paper-experiment": paper_experiment.Command,
    "qber-demo": qber_demo.Command,
    "suite": suite.Command,
}


class CommandParser(argparse.ArgumentParser):
    """Usage errors exit with the config code instead of argparse's 2."""

    def error(self, message: str):
        raise CommandError(message, ExitCode.CONFIG)


def build_parser(commands: dict[str, BaseCommand]) -> CommandParser:
    parser = CommandParser(
        prog="multiparty-qhe",
        description="Multi-party dynamic quantum homomorphic encryption simulator.",
    )
    parser.add_argument("--log-level", default=None, help="structlog level for stderr output.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in commands.items():
        subparser = subparsers.add_parser(name, help=command.help, description=command.help)
        command.add_arguments(subparser)
    return parser


def main(
    argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None
) -> int:
    commands = {name: cls(stdout=stdout, stderr=stderr) for name, cls in COMMANDS.items()}
    parser = build_parser(commands)
    try:
        args = parser.parse_args(argv)
    except CommandError as exc:
        OutputWrapper(stderr or sys.stderr).write(f"error: {exc}")
        return exc.returncode

    options = vars(args)
    settings.configure_logging(options.pop("log_level"))
    return commands[options.pop("command")].execute(**options)
