"""
Command-line front door.

The subcommands are Django management commands; cli_main runs one of them and
turns the outcome into an exit code: 0 for yes/ok, 1 for a negative answer,
2 for usage or input errors.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError

from tbone.exceptions import TboneError
from tbone.families import by_name
from tbone.graph import Graph, load_graph, load_graph_json

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('recognize', 'oracle', 'generate', 'validate', 'atoms', 'convert', 'sweep')

USAGE = f"usage: python -m analysis {{{','.join(SUBCOMMANDS)}}} [options]\n"


class NegativeAnswer(CommandError):
    """The command ran and its answer is no; output has already been written."""

    def __init__(self, message):
        super().__init__(message, returncode=1)


def read_text(path: str) -> str:
    return Path(path).read_text(encoding='utf-8')


def read_graph(path: str) -> Graph:
    """Edge-list file, or the JSON graph format when the name ends in .json."""
    text = read_text(path)
    if path.endswith('.json'):
        return load_graph_json(text)
    return load_graph(text)


class TboneCommand(BaseCommand):
    """Shared plumbing: graph input, output files, library errors as exit code 2."""

    def add_graph_arguments(self, parser, required=True):
        group = parser.add_mutually_exclusive_group(required=required)
        group.add_argument(
            '--graph',
            type=str,
            help='Graph file: edge list ("n m" header, then m "u v" lines) or .json'
        )
        group.add_argument(
            '--family',
            type=str,
            help='Named graph instead of a file, e.g. c4, k3,3, grid4x4, double-apex'
        )

    def input_graph(self, options) -> Graph:
        if options.get('family'):
            return by_name(options['family'])
        return read_graph(options['graph'])

    def emit(self, text: str, out: Optional[str] = None) -> None:
        if not text.endswith('\n'):
            text += '\n'
        if out:
            Path(out).write_text(text, encoding='utf-8')
            logger.info("wrote %s", out)
        else:
            self.stdout.write(text, ending='')

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except (TboneError, OSError) as exc:
            logger.error("%s failed: %s", self.__module__.rsplit('.', 1)[-1], exc)
            raise CommandError(str(exc), returncode=2) from exc

    def run(self, **options):
        raise NotImplementedError


def cli_main(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Run one subcommand and return its exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    argv = list(argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        if argv:
            stderr.write(f"unknown subcommand {argv[0]!r}\n")
        stderr.write(USAGE)
        return 2
    try:
        call_command(argv[0], *argv[1:], stdout=stdout, stderr=stderr)
    except NegativeAnswer:
        return 1
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return 2
    return 0
