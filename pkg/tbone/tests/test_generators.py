import random

from django.test import SimpleTestCase

from tbone.chordal import is_chordal
from tbone.decomposition import Decomposition, Shape, evaluate, validate
from tbone.exceptions import (
    BetweennessViolation,
    GraphFormatError,
    LimitExceededError,
    PreconditionError,
    SandwichStructureError,
)
from tbone.families import cycle, path
from tbone.generators import (
    BetweennessInstance,
    GadgetMap,
    ball_augmentation,
    betweenness_graph,
    betweenness_ordering,
    betweenness_witness,
    chain_triples,
    dump_betweenness,
    dump_sandwich,
    load_betweenness,
    load_sandwich,
    maximal_sandwich,
    random_betweenness_instance,
    random_sandwich_instance,
    sandwich_graph,
    sandwich_instance,
    sandwich_witness,
    solve_betweenness,
    solve_sandwich,
    transfer_decomposition,
)
from tbone.graph import Graph
from tbone.oracle import ParameterQuery, optimal_decomposition


class GadgetMapTests(SimpleTestCase):
    def test_lookup_both_ways(self):
        roles = GadgetMap({'a': 0, 'b': 1})
        self.assertEqual(roles['b'], 1)
        self.assertEqual(roles.role_of(0), 'a')
        self.assertIn('a', roles)
        self.assertEqual(len(roles), 2)

    def test_must_be_injective(self):
        with self.assertRaises(PreconditionError):
            GadgetMap({'a': 0, 'b': 0})


class BetweennessGraphTests(SimpleTestCase):
    def setUp(self):
        self.inst = BetweennessInstance(5, chain_triples(5, 4))

    def test_chain_triples(self):
        self.assertEqual(chain_triples(5, 4), [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 1, 2)])

    def test_chain_instance_size(self):
        graph, roles = betweenness_graph(self.inst)
        self.assertEqual(graph.n, 26)
        self.assertEqual(graph.m, 103)
        self.assertEqual(len(roles), 26)

    def test_no_triples(self):
        graph, roles = betweenness_graph(BetweennessInstance(3))
        self.assertEqual(graph.n, 6)
        self.assertEqual(graph.m, 3 + 3)
        self.assertEqual(graph.neighbors(roles['v1']), {roles['u1']})

    def test_gadget_adjacency_to_clique(self):
        graph, roles = betweenness_graph(BetweennessInstance(3, [(0, 1, 2)]))
        a, c = roles['a0'], roles['c0']
        self.assertFalse(graph.has_edge(a, roles['u2']))
        self.assertTrue(graph.has_edge(a, roles['u0']))
        self.assertFalse(graph.has_edge(c, roles['u0']))
        self.assertTrue(graph.has_edge(c, roles['u2']))

    def test_bad_triple(self):
        with self.assertRaises(PreconditionError):
            BetweennessInstance(3, [(0, 0, 1)])
        with self.assertRaises(PreconditionError):
            BetweennessInstance(3, [(0, 1, 3)])


class BetweennessWitnessTests(SimpleTestCase):
    def test_identity_on_chain_instance(self):
        inst = BetweennessInstance(5, chain_triples(5, 4))
        d = betweenness_witness(inst, range(5))
        self.assertEqual(d.shape, Shape.PATH)
        self.assertEqual(len(d), 5)
        metrics = evaluate(d)
        self.assertEqual(metrics.breadth, 1)
        self.assertEqual(metrics.length, 2)

    def test_single_triple(self):
        inst = BetweennessInstance(3, [(0, 1, 2)])
        d = betweenness_witness(inst, [0, 1, 2])
        self.assertEqual(len(d), 3)
        self.assertEqual(evaluate(d).breadth, 1)

    def test_violating_ordering_names_the_triple(self):
        inst = BetweennessInstance(3, [(0, 1, 2)])
        with self.assertRaises(BetweennessViolation) as ctx:
            betweenness_witness(inst, [1, 0, 2])
        self.assertEqual(ctx.exception.triple, (0, 1, 2))

    def test_not_a_permutation(self):
        with self.assertRaises(PreconditionError):
            betweenness_witness(BetweennessInstance(3), [0, 0, 1])

    def test_ordering_read_back(self):
        inst = BetweennessInstance(5, [(3, 1, 4), (0, 2, 3)])
        ordering = solve_betweenness(inst)
        recovered = betweenness_ordering(inst, betweenness_witness(inst, ordering))
        self.assertIsNone(inst.satisfied_by(recovered))

    def test_ordering_needs_a_path(self):
        inst = BetweennessInstance(3, [(0, 1, 2)])
        d = betweenness_witness(inst, [0, 1, 2]).with_shape(Shape.TREE)
        with self.assertRaises(PreconditionError):
            betweenness_ordering(inst, d)

    def test_ordering_needs_length_two(self):
        inst = BetweennessInstance(3, [(0, 1, 2)])
        graph, _ = betweenness_graph(inst)
        d = Decomposition.path(graph, [set(graph.vertices())])
        with self.assertRaises(PreconditionError):
            betweenness_ordering(inst, d)


class SolveBetweennessTests(SimpleTestCase):
    def test_single_triple_identity(self):
        self.assertEqual(solve_betweenness(BetweennessInstance(3, [(0, 1, 2)])), [0, 1, 2])

    def test_unsatisfiable(self):
        self.assertIsNone(solve_betweenness(BetweennessInstance(3, [(0, 1, 2), (1, 0, 2)])))

    def test_limit(self):
        with self.assertRaises(LimitExceededError):
            solve_betweenness(BetweennessInstance(6), limit=5)

    def test_random_instances_are_well_formed(self):
        rng = random.Random(3)
        inst = random_betweenness_instance(6, 4, rng)
        self.assertEqual(inst.m, 4)
        for triple in inst.triples:
            self.assertEqual(len(set(triple)), 3)


class BetweennessFormatTests(SimpleTestCase):
    def test_dump_then_load(self):
        inst = BetweennessInstance(5, chain_triples(5, 3))
        self.assertEqual(load_betweenness(dump_betweenness(inst)), inst)

    def test_triple_count_mismatch(self):
        with self.assertRaises(GraphFormatError):
            load_betweenness("3 2\n0 1 2\n")

    def test_out_of_range_triple(self):
        with self.assertRaises(GraphFormatError):
            load_betweenness("3 1\n0 1 5\n")


class SandwichTests(SimpleTestCase):
    def setUp(self):
        # forbidden pairs 0-2 and 1-3 leave the 4-cycle 0-1-2-3 as g2
        self.yes = sandwich_instance(path(4), [(0, 2), (1, 3)])
        self.no = sandwich_instance(cycle(4), [(0, 2), (1, 3)])

    def test_instance_shape(self):
        self.assertEqual(self.yes.forbidden_pairs, [(0, 2), (1, 3)])
        self.assertEqual(self.yes.partner(3), 1)

    def test_odd_vertex_count(self):
        with self.assertRaises(SandwichStructureError):
            sandwich_instance(path(3), [(0, 2)])

    def test_g1_must_fit_in_g2(self):
        with self.assertRaises(SandwichStructureError):
            sandwich_instance(Graph(4, [(0, 2)]), [(0, 2), (1, 3)])

    def test_solver(self):
        h = solve_sandwich(self.yes)
        self.assertTrue(is_chordal(h))
        self.assertTrue(self.yes.is_sandwich(h))
        self.assertIsNone(solve_sandwich(self.no))

    def test_maximal_sandwich_adds_edges_in_order(self):
        inst = sandwich_instance(Graph(4, [(0, 1)]), [(0, 2), (1, 3)])
        h = maximal_sandwich(inst, inst.g1)
        # (2, 3) would close the 4-cycle
        self.assertEqual(h.edges, ((0, 1), (0, 3), (1, 2)))
        self.assertTrue(is_chordal(h))

    def test_maximal_sandwich_keeps_a_maximal_input(self):
        self.assertEqual(maximal_sandwich(self.yes, path(4)), path(4))

    def test_gadget_graph(self):
        graph, roles = sandwich_graph(self.yes)
        self.assertEqual(graph.n, 2 * 4 + 7 * 2)
        c, x = roles['c_0_2'], roles['x_0_2']
        shared = graph.closed_neighborhood(c) & graph.closed_neighborhood(x)
        self.assertEqual(shared, {roles['s_0_2'], roles['t_0_2']})
        self.assertFalse(graph.has_edge(roles['v0'], roles["v2'"]))
        self.assertTrue(graph.has_edge(roles['v0'], roles["v1'"]))

    def test_witness_is_a_star_decomposition(self):
        d = sandwich_witness(self.yes, solve_sandwich(self.yes))
        self.assertTrue(validate(d))
        self.assertTrue(evaluate(d).is_star)

    def test_witness_needs_a_chordal_sandwich(self):
        with self.assertRaises(SandwichStructureError):
            sandwich_witness(self.yes, cycle(4).with_edges([(0, 2)]))

    def test_random_instance_pairs_form_a_matching(self):
        inst = random_sandwich_instance(6, 0.5, random.Random(1))
        seen = [v for pair in inst.forbidden_pairs for v in pair]
        self.assertEqual(sorted(seen), list(range(6)))

    def test_dump_then_load(self):
        again = load_sandwich(dump_sandwich(self.yes))
        self.assertEqual((again.g1, again.g2), (self.yes.g1, self.yes.g2))

    def test_load_needs_two_blocks(self):
        with self.assertRaises(GraphFormatError):
            load_sandwich("4 0\n")


class BallAugmentationTests(SimpleTestCase):
    def test_path_radius_one(self):
        graph, roles = ball_augmentation(path(3), 1)
        self.assertEqual(graph.n, 6)
        self.assertEqual(graph.m, 2 + 3 + 7)
        self.assertEqual(graph.neighbors(roles['u0']) - {roles['u1'], roles['u2']}, {0, 1})

    def test_radius_must_be_positive(self):
        with self.assertRaises(PreconditionError):
            ball_augmentation(path(3), 0)

    def test_lift_and_project(self):
        g = cycle(6)
        best = optimal_decomposition(g, ParameterQuery('tb'))
        self.assertEqual(best.value, 2)
        lifted = transfer_decomposition(g, 2, best.decomposition, 'lift')
        self.assertTrue(evaluate(lifted).is_star)
        projected = transfer_decomposition(g, 2, lifted, 'project')
        self.assertEqual(projected.host, g)
        self.assertLessEqual(evaluate(projected).breadth, 2)

    def test_lift_needs_breadth_within_radius(self):
        g = cycle(6)
        best = optimal_decomposition(g, ParameterQuery('tb'))
        with self.assertRaises(PreconditionError):
            transfer_decomposition(g, 1, best.decomposition, 'lift')

    def test_unknown_direction(self):
        g = path(2)
        d = Decomposition.from_bags(g, [{0, 1}])
        with self.assertRaises(PreconditionError):
            transfer_decomposition(g, 1, d, 'sideways')
