"""Management command to check a decomposition against a graph and report its metrics."""

import json

from analysis.cli import NegativeAnswer, TboneCommand, read_text
from tbone.decomposition import Decomposition, evaluate, validate


class Command(TboneCommand):
    help = 'Validate a decomposition JSON file and print breadth, length and star status'

    def add_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument(
            '--decomposition',
            type=str,
            required=True,
            help='Decomposition JSON file'
        )

    def run(self, **options):
        g = self.input_graph(options)
        d = Decomposition.from_json(g, read_text(options['decomposition']))
        report = validate(d)
        out = {'valid': report.to_dict()}
        if report:
            out['metrics'] = evaluate(d).to_dict()
        self.stdout.write(json.dumps(out))
        if not report:
            raise NegativeAnswer(f"invalid decomposition: {report.axiom}")
