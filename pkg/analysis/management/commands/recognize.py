"""
Management command to decide tree-breadth one.

Bipartite graphs go to the bipartite recognizer, planar graphs to the planar
one. Anything else is refused unless --fallback-oracle asks for the
exponential oracle.
"""

import json
import logging

import networkx as nx
from django.core.management.base import CommandError

from analysis.cli import NegativeAnswer, TboneCommand
from tbone.bipartite import recognize_bipartite_tb1
from tbone.oracle import star_decomposition
from tbone.planar import is_planar, recognize_planar_tb1
from tbone.recognition import Recognition

logger = logging.getLogger(__name__)


class Command(TboneCommand):
    help = 'Decide whether a graph has tree-breadth at most one'

    def add_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument(
            '--jobs',
            type=int,
            default=None,
            help='Worker threads for deciding atoms (default: TBONE_JOBS)'
        )
        parser.add_argument(
            '--fallback-oracle',
            action='store_true',
            help='Use the exhaustive oracle for graphs that are neither bipartite nor planar'
        )
        parser.add_argument(
            '--limit',
            type=int,
            default=None,
            help='Vertex limit for the oracle fallback (default: TBONE_ORACLE_LIMIT)'
        )
        parser.add_argument(
            '--trace',
            action='store_true',
            help='Also print the planar step trace of every atom'
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the star-decomposition JSON here instead of standard output'
        )

    def run(self, **options):
        g = self.input_graph(options)
        g.require_connected('recognize')
        if nx.is_bipartite(g.to_networkx()):
            method = 'bipartite'
            result = recognize_bipartite_tb1(g, jobs=options['jobs'])
        elif is_planar(g):
            method = 'planar'
            result = recognize_planar_tb1(g, jobs=options['jobs'])
        elif options['fallback_oracle']:
            method = 'oracle'
            found = star_decomposition(g, options['limit'])
            result = Recognition(found is not None, found)
        else:
            raise CommandError(
                'graph is neither bipartite nor planar; pass --fallback-oracle to use the oracle',
                returncode=2,
            )
        logger.info("recognize: %s recognizer answered %s", method, 'yes' if result.answer else 'no')

        self.stdout.write(f"tb<=1: {'yes' if result.answer else 'no'}")
        if options['trace']:
            for i, trace in enumerate(result.traces):
                self.stdout.write(json.dumps({'atom': i, **trace.to_dict()}))
        if not result.answer:
            if result.detail:
                self.stdout.write(result.detail)
            raise NegativeAnswer('tree-breadth is greater than one')
        self.emit(result.decomposition.to_json(), options['out'])
