"""Command base class and exit codes."""

from __future__ import annotations

import argparse
import sys
from enum import IntEnum
from typing import TextIO


class ExitCode(IntEnum):
    OK = 0
    CONFIG = 1
    VERIFICATION_FAILED = 2
    ABORTED = 3


class CommandError(Exception):
    """Stops a command; the message is printed to stderr as a single line."""

    def __init__(self, message: str, returncode: int = ExitCode.CONFIG):
        self.returncode = int(returncode)
        super().__init__(message)


class OutputWrapper:
    """Line-oriented writer around a text stream."""

    def __init__(self, stream: TextIO):
        self._stream = stream

    def write(self, line: str = "") -> None:
        self._stream.write(line if line.endswith("\n") else line + "\n")

    def lines(self, lines) -> None:
        for line in lines:
            self.write(line)


class BaseCommand:
    """A subcommand: declares its flags in `add_arguments` and runs in `handle`.

    `handle` returns the exit code, or raises CommandError.
    """

    help = ""

    def __init__(self, stdout: TextIO | None = None, stderr: TextIO | None = None):
        self.stdout = OutputWrapper(stdout or sys.stdout)
        self.stderr = OutputWrapper(stderr or sys.stderr)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def handle(self, **options) -> int:
        raise NotImplementedError("subclasses of BaseCommand must provide a handle() method")

    def execute(self, **options) -> int:
        try:
            return int(self.handle(**options))
        except CommandError as exc:
            self.stderr.write(f"error: {exc}")
            return exc.returncode
