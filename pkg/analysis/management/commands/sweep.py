"""
Management command to run the property sweeps.

Each sweep prints one JSON summary line. Any failure makes the command exit
with the negative-answer code.
"""

import json

from django.core.management.base import CommandError

from analysis.cli import NegativeAnswer, TboneCommand
from analysis.sweeps import SWEEPS, run_sweeps
from analysis.tasks import submit_sweeps


class Command(TboneCommand):
    help = 'Run property sweeps over small graphs and report failures'

    def add_arguments(self, parser):
        parser.add_argument(
            'names',
            nargs='*',
            help=f"Sweeps to run: {', '.join(sorted(SWEEPS))} or all (default: all)"
        )
        parser.add_argument(
            '--max-n',
            type=int,
            default=None,
            help='Largest exhaustive graph size for the sweeps that take one (at most 7)'
        )
        parser.add_argument(
            '--samples',
            type=int,
            default=None,
            help='Random samples for the sweeps that draw them; 8-vertex planar graphs for treewidth'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Random seed'
        )
        parser.add_argument(
            '--async',
            dest='use_tasks',
            action='store_true',
            help='Run each sweep as a Celery task'
        )

    def sweep_options(self, names, max_n, samples, seed):
        options = {}
        for name in names:
            args = {}
            if max_n is not None and name in ('oracle', 'bipartite', 'planar', 'ball', 'treewidth'):
                args['max_n'] = max_n
            if samples is not None and name in ('betweenness', 'sandwich'):
                args['samples'] = samples
            if samples is not None and name == 'oracle':
                args['samples'] = samples
            if samples is not None and name == 'planar':
                args['random_samples'] = samples
            if samples is not None and name == 'treewidth':
                args['planar_limit'] = samples
            if name in ('oracle', 'planar', 'betweenness', 'sandwich'):
                args['seed'] = seed
            options[name] = args
        return options

    def run(self, **options):
        names = options['names'] or ['all']
        if 'all' in names:
            names = list(SWEEPS)
        unknown = [n for n in names if n not in SWEEPS]
        if unknown:
            raise CommandError(f"unknown sweep {unknown[0]!r}", returncode=2)
        per_sweep = self.sweep_options(names, options['max_n'], options['samples'], options['seed'])
        if options['use_tasks']:
            summaries = [h.get() for h in submit_sweeps(names, per_sweep)]
        else:
            summaries = run_sweeps(names, **per_sweep)

        failed = 0
        for summary in summaries:
            failed += len(summary['failures'])
            self.stdout.write(json.dumps(summary))
        if failed:
            raise NegativeAnswer(f'{failed} sweep failures')
