"""Management command to convert a graph between edge-list, JSON and DOT."""

from analysis.cli import TboneCommand
from analysis.management.commands.generate import FORMATS


class Command(TboneCommand):
    help = 'Convert a graph to another format'

    def add_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument(
            '--format',
            type=str,
            choices=sorted(FORMATS),
            default='json',
            help='Output format'
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the result here instead of standard output'
        )

    def run(self, **options):
        g = self.input_graph(options)
        self.emit(FORMATS[options['format']](g), options['out'])
