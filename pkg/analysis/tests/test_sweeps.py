import random
from itertools import combinations, islice

import networkx as nx
from django.test import SimpleTestCase

from analysis import sweeps
from analysis.tasks import run_sweep, submit_sweeps
from tbone.decomposition import evaluate, validate
from tbone.planar import is_planar, recognize_planar_tb1


class GraphSourceTests(SimpleTestCase):
    def test_connected_graphs_up_to_four(self):
        # 1 + 1 + 2 + 6 connected graphs on 1..4 vertices
        self.assertEqual(len(list(sweeps.connected_graphs(4))), 10)
        self.assertEqual(len(list(sweeps.connected_graphs(4, min_n=4))), 6)

    def test_atlas_stops_at_seven(self):
        with self.assertRaises(ValueError):
            list(sweeps.connected_graphs(8))

    def test_connected_planar_graphs(self):
        # K5 is the only connected graph on five vertices that is not planar
        self.assertEqual(len(list(sweeps.connected_planar_graphs(5))), 20)
        self.assertEqual(len(list(sweeps.connected_planar_graphs(4))), 6)

    def test_planar_graphs_on_eight_vertices(self):
        graphs = list(islice(sweeps.connected_planar_graphs(8), 40))
        self.assertEqual(len(graphs), 40)
        for g in graphs:
            self.assertEqual(g.n, 8)
            self.assertTrue(g.is_connected())
            self.assertTrue(is_planar(g))
        for g, h in combinations(graphs, 2):
            self.assertFalse(nx.is_isomorphic(g.to_networkx(), h.to_networkx()))

    def test_planar_graphs_stop_at_eight(self):
        with self.assertRaises(ValueError):
            next(sweeps.connected_planar_graphs(9))

    def test_random_graphs(self):
        rng = random.Random(3)
        g = sweeps.random_connected_graph(6, 0.5, rng)
        self.assertEqual(g.n, 6)
        self.assertTrue(g.is_connected())
        for _ in range(5):
            h = sweeps.random_planar_graph(9, rng)
            self.assertTrue(h.is_connected())
            self.assertTrue(is_planar(h))


class SweepTests(SimpleTestCase):
    def assertClean(self, summary, name):
        self.assertEqual(summary['name'], name)
        self.assertGreater(summary['checked'], 0)
        self.assertEqual(summary['failures'], [])

    def test_oracle_consistency(self):
        summary = sweeps.oracle_consistency(max_n=4, random_n=5, samples=3, contraction_n=4)
        self.assertClean(summary, 'oracle_consistency')
        self.assertEqual(summary['checked'], 13)

    def test_bipartite_agreement(self):
        self.assertClean(sweeps.bipartite_agreement(max_n=5), 'bipartite_agreement')

    def test_planar_agreement(self):
        summary = sweeps.planar_agreement(max_n=5, random_samples=5, random_max_n=7)
        self.assertClean(summary, 'planar_agreement')

    def test_planar_certificates_on_seeded_random_graphs(self):
        # seed 1 draws graphs whose replay undoes forced edges
        summary = sweeps.planar_agreement(max_n=4, random_samples=1000, seed=1)
        self.assertClean(summary, 'planar_agreement')
        self.assertEqual(summary['checked'], 1010)

    def test_betweenness_pipeline(self):
        self.assertClean(sweeps.betweenness_pipeline(samples=2, max_n=4), 'betweenness_pipeline')

    def test_sandwich_pipeline(self):
        summary = sweeps.sandwich_pipeline(samples=2, sizes=(4,))
        self.assertEqual(summary['failures'], [])
        self.assertLessEqual(summary['checked'], 2)

    def test_ball_round_trip(self):
        self.assertClean(sweeps.ball_round_trip(max_n=4, radii=(1,)), 'ball_round_trip')

    def test_treewidth_properties(self):
        summary = sweeps.treewidth_properties(max_n=5, planar_limit=15)
        self.assertClean(summary, 'treewidth_properties')
        # 31 connected graphs up to 5 vertices, 15 planar graphs on 8, the 4x4 grid
        self.assertEqual(summary['checked'], 47)

    def test_treewidth_properties_without_planar_graphs(self):
        summary = sweeps.treewidth_properties(max_n=4, planar_n=0)
        self.assertEqual(summary['checked'], 11)

    def test_failure_is_recorded_with_the_graph(self):
        summary = sweeps._summary('demo')
        with self.assertLogs('analysis.sweeps', level='WARNING'):
            sweeps._fail(summary, sweeps.Graph(2, [(0, 1)]), 'broken')
        self.assertEqual(summary['failures'], [{'n': 2, 'edges': [[0, 1]], 'detail': 'broken'}])

    def test_run_sweeps_passes_arguments_by_name(self):
        results = sweeps.run_sweeps(['ball', 'treewidth'], ball={'max_n': 3}, treewidth={'max_n': 3, 'planar_n': 0})
        self.assertEqual([r['name'] for r in results], ['ball_round_trip', 'treewidth_properties'])


class PlanarCertificateTests(SimpleTestCase):
    def test_certificates_on_eight_to_ten_vertices(self):
        rng = random.Random(1)
        accepted = 0
        for _ in range(300):
            g = sweeps.random_planar_graph(rng.randint(8, 10), rng)
            result = recognize_planar_tb1(g)
            if not result.answer:
                continue
            accepted += 1
            with self.subTest(edges=g.edges):
                self.assertTrue(validate(result.decomposition))
                metrics = evaluate(result.decomposition)
                self.assertEqual(metrics.breadth, 1)
                self.assertTrue(metrics.is_star)
        self.assertGreater(accepted, 0)


class SweepTaskTests(SimpleTestCase):
    def test_unknown_sweep(self):
        summary = run_sweep.apply(args=['nope']).get()
        self.assertEqual(summary['checked'], 0)
        self.assertEqual(summary['failures'], [{'detail': 'unknown sweep'}])

    def test_submit_keeps_order(self):
        handles = submit_sweeps(['treewidth', 'bipartite'], {'treewidth': {'max_n': 3, 'planar_n': 0}, 'bipartite': {'max_n': 3}})
        self.assertEqual([h.get()['name'] for h in handles], ['treewidth_properties', 'bipartite_agreement'])
