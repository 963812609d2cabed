"""Management command to compute tb, tl, pb or pl exactly on a small graph."""

from analysis.cli import TboneCommand
from tbone.oracle import Parameter, ParameterQuery, exact_parameter, optimal_decomposition


class Command(TboneCommand):
    help = 'Compute a tree/path breadth/length parameter exactly (small graphs only)'

    def add_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument(
            '--param',
            type=str,
            choices=[p.value for p in Parameter],
            default='tb',
            help='Parameter to compute'
        )
        parser.add_argument(
            '--limit',
            type=int,
            default=None,
            help='Largest graph to accept (default: TBONE_ORACLE_LIMIT)'
        )
        parser.add_argument(
            '--method',
            type=str,
            choices=['orderings', 'supergraphs'],
            default='orderings',
            help='Subset program (default) or direct supergraph enumeration'
        )
        parser.add_argument(
            '--witness',
            action='store_true',
            help='Also print a decomposition attaining the value'
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the witness JSON here instead of standard output'
        )

    def run(self, **options):
        g = self.input_graph(options)
        if options['limit'] is None:
            q = ParameterQuery(options['param'])
        else:
            q = ParameterQuery(options['param'], options['limit'])
        if options['witness']:
            result = optimal_decomposition(g, q)
            self.stdout.write(f"{q.which.value} = {result.value}")
            self.emit(result.decomposition.to_json(), options['out'])
        else:
            value = exact_parameter(g, q, method=options['method'])
            self.stdout.write(f"{q.which.value} = {value}")
