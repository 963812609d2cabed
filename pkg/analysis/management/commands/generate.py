"""
Management command to build reduction instances.

- betweenness: the gadget graph of an ordering instance (chained triples or a file)
- sandwich: the gadget graph of a chordal sandwich instance (random or a file)
- ball: the ball augmentation of a graph for a radius r

The graph goes to --out (or standard output), the role map to --map.
"""

import json
import random

from django.core.management.base import CommandError

from analysis.cli import TboneCommand, read_text
from tbone.generators import (
    BetweennessInstance,
    ball_augmentation,
    betweenness_graph,
    chain_triples,
    load_betweenness,
    load_sandwich,
    random_sandwich_instance,
    sandwich_graph,
)
from tbone.graph import dump_edge_list, dump_graph_json, to_dot

FORMATS = {
    'el': dump_edge_list,
    'dot': to_dot,
    'json': dump_graph_json,
}


class Command(TboneCommand):
    help = 'Generate a reduction instance graph and its gadget map'

    def add_arguments(self, parser):
        parser.add_argument(
            'kind',
            type=str,
            choices=['betweenness', 'sandwich', 'ball'],
            help='Which reduction to build'
        )
        self.add_graph_arguments(parser, required=False)
        parser.add_argument(
            '--instance',
            type=str,
            default=None,
            help='Betweenness or sandwich instance file'
        )
        parser.add_argument(
            '--n',
            type=int,
            default=5,
            help='Ground set size for generated instances'
        )
        parser.add_argument(
            '--triples',
            type=str,
            default='chain4',
            help="Betweenness triples: 'chain<m>' for m chained windows"
        )
        parser.add_argument(
            '--p',
            type=float,
            default=0.5,
            help='Edge probability for random sandwich instances'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Random seed'
        )
        parser.add_argument(
            '--r',
            type=int,
            default=1,
            help='Ball radius for the ball augmentation'
        )
        parser.add_argument(
            '--format',
            type=str,
            choices=sorted(FORMATS),
            default='el',
            help='Output format for the graph'
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the graph here instead of standard output'
        )
        parser.add_argument(
            '--map',
            type=str,
            default=None,
            help='Write the gadget role map JSON here'
        )

    def build(self, options):
        kind = options['kind']
        if kind == 'betweenness':
            if options['instance']:
                inst = load_betweenness(read_text(options['instance']))
            else:
                spec = options['triples']
                if not spec.startswith('chain') or not spec[5:].isdigit():
                    raise CommandError(f"unknown triples spec {spec!r}; use chain<m>", returncode=2)
                inst = BetweennessInstance(options['n'], chain_triples(options['n'], int(spec[5:])))
            return betweenness_graph(inst)
        if kind == 'sandwich':
            if options['instance']:
                inst = load_sandwich(read_text(options['instance']))
            else:
                inst = random_sandwich_instance(options['n'], options['p'], random.Random(options['seed']))
            return sandwich_graph(inst)
        if not (options.get('graph') or options.get('family')):
            raise CommandError('ball needs --graph or --family', returncode=2)
        return ball_augmentation(self.input_graph(options), options['r'])

    def run(self, **options):
        graph, roles = self.build(options)
        self.emit(FORMATS[options['format']](graph), options['out'])
        if options['map']:
            self.emit(json.dumps(roles.to_dict()), options['map'])
        if options['out']:
            self.stdout.write(f"{options['kind']}: {graph.n} vertices, {graph.m} edges")
