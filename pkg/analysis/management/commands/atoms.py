"""Management command to print the clique-minimal-separator decomposition of a graph."""

import json

from analysis.cli import TboneCommand
from tbone.chordal import atoms


class Command(TboneCommand):
    help = 'Split a connected graph into atoms along clique minimal separators'

    def add_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the JSON here instead of standard output'
        )

    def run(self, **options):
        split = atoms(self.input_graph(options))
        self.emit(json.dumps(split.to_dict()), options['out'])
