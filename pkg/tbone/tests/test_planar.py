import networkx as nx
from django.test import SimpleTestCase

from tbone.decomposition import Decomposition, check_axioms, evaluate, validate
from tbone.exceptions import (
    CertificateError,
    DisconnectedGraphError,
    NotMinimalSeparatorError,
    NotPlanarError,
    PreconditionError,
    RecognitionError,
)
from tbone.families import complete, complete_bipartite, cycle, diamond, double_apex_cycle, grid, path
from tbone.graph import Graph
from tbone.planar import (
    LeafType,
    LeafVertex,
    Step,
    StepTrace,
    TreeDraft,
    classify,
    cycle_neighbors,
    find_leaf_vertex,
    induced_path,
    induces_cycle,
    intermediate_graph,
    is_planar,
    make_separator_cycle,
    planar_embed,
    recognize_planar_tb1,
    replay,
    require_embedding,
    two_bag_star,
)
from tbone.planar.engine import _rewrite
from tbone.planar.trace import (
    STEP_ADD_YZ,
    STEP_CONNECT_B,
    STEP_CONTRACT_BX,
    STEP_CONTRACT_VA,
    STEP_FORCE_EDGES,
    STEP_REMOVE_LEAF,
)


def wheel(rim: int) -> Graph:
    """Hub 0 joined to the cycle 1..rim."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, edges)


class EmbeddingTests(SimpleTestCase):
    def test_k4_has_four_faces(self):
        e = planar_embed(complete(4))
        self.assertEqual(e.face_count, 4)
        self.assertEqual(e.euler_characteristic(), 2)
        self.assertEqual(set(e.rotation), set(range(4)))

    def test_non_planar(self):
        self.assertIsNone(planar_embed(complete(5)))
        self.assertIsNone(planar_embed(complete_bipartite(3, 3)))
        self.assertFalse(is_planar(complete(5)))
        with self.assertRaises(NotPlanarError):
            require_embedding(complete_bipartite(3, 3))

    def test_single_vertex(self):
        self.assertEqual(planar_embed(Graph(1)).face_count, 1)

    def test_needs_connected_graph(self):
        with self.assertRaises(DisconnectedGraphError):
            planar_embed(Graph(2))


class IntermediateGraphTests(SimpleTestCase):
    def test_sizes(self):
        cases = [(cycle(3), 5, 9), (cycle(4), 6, 12), (path(2), 3, 3)]
        for g, n, m in cases:
            with self.subTest(g=g):
                gi = intermediate_graph(require_embedding(g))
                self.assertEqual(gi.graph.n, n)
                self.assertEqual(gi.graph.m, m)

    def test_face_vertices_follow_originals(self):
        g = cycle(4)
        gi = intermediate_graph(require_embedding(g))
        self.assertEqual(sorted(gi.face_vertices.values()), [4, 5])
        self.assertTrue(is_planar(gi.graph))
        self.assertEqual(gi.graph.labels[4], 'face0')


class SeparatorCycleTests(SimpleTestCase):
    def test_two_vertex_separators_become_edges(self):
        for g, s in ((cycle(4), (0, 2)), (cycle(6), (0, 3))):
            with self.subTest(g=g):
                h = make_separator_cycle(g, s)
                self.assertEqual(set(h.edges) - set(g.edges), {s})
                self.assertTrue(induces_cycle(h, s))

    def test_grid_row_closes_into_a_cycle(self):
        g = grid(3, 3)
        row = {3, 4, 5}
        h = make_separator_cycle(g, row)
        self.assertTrue(set(g.edges) <= set(h.edges))
        self.assertTrue(induces_cycle(h, row))
        self.assertTrue(is_planar(h))
        self.assertEqual(cycle_neighbors(h, row, 4), [3, 5])

    def test_not_a_minimal_separator(self):
        with self.assertRaises(NotMinimalSeparatorError):
            make_separator_cycle(cycle(4), {0, 1})

    def test_needs_biconnected_graph(self):
        with self.assertRaises(PreconditionError):
            make_separator_cycle(path(3), {1})

    def test_induces_cycle(self):
        g = cycle(5)
        self.assertTrue(induces_cycle(g, range(5)))
        self.assertFalse(induces_cycle(g, {0, 1, 2}))
        self.assertFalse(induces_cycle(g, {0, 2}))


class LeafVertexTests(SimpleTestCase):
    def test_induced_path(self):
        g = cycle(6)
        self.assertEqual(induced_path(g, {2, 0, 1}), (0, 1, 2))
        self.assertIsNone(induced_path(g, {0, 2}))
        self.assertIsNone(induced_path(g, range(6)))

    def test_c4_vertex_is_type3(self):
        leaf = find_leaf_vertex(cycle(4))
        self.assertEqual(leaf.vertex, 0)
        self.assertIs(leaf.kind, LeafType.TYPE3)
        self.assertEqual(leaf.path, (1, 2, 3))
        self.assertEqual((leaf.a, leaf.b, leaf.c), (1, 2, 3))

    def test_diamond_has_type2(self):
        leaf = find_leaf_vertex(diamond())
        self.assertEqual(leaf.vertex, 1)
        self.assertIs(leaf.kind, LeafType.TYPE2)
        self.assertEqual(leaf.path, (0, 2, 3))

    def test_type1(self):
        # v = 0 sees the path 1-2-3-4, and 5 sees all of it
        edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4),
                 (5, 1), (5, 2), (5, 3), (5, 4)]
        g = Graph(6, edges)
        leaf = find_leaf_vertex(g)
        self.assertEqual(leaf.vertex, 0)
        self.assertIs(leaf.kind, LeafType.TYPE1)
        self.assertEqual(leaf.dominator, 5)
        self.assertEqual(leaf.interior, (2, 3))
        self.assertEqual(leaf.to_dict()['dominator'], 5)

    def test_classify_and_none(self):
        self.assertIsNone(classify(cycle(5), 0))
        self.assertIsNone(find_leaf_vertex(cycle(6)))
        self.assertIs(classify(wheel(6), 1).kind, LeafType.TYPE2)


class TwoBagStarTests(SimpleTestCase):
    def test_universal_vertex(self):
        d = two_bag_star(complete(4))
        self.assertEqual(d.bag_sets(), [frozenset(range(4))])

    def test_c4(self):
        d = two_bag_star(cycle(4))
        self.assertEqual(d.bag_sets(), [frozenset({0, 1, 3}), frozenset({1, 2, 3})])
        self.assertTrue(evaluate(d).is_star)

    def test_double_apex_cycle(self):
        d = two_bag_star(double_apex_cycle())
        self.assertEqual(len(d), 2)
        self.assertTrue(evaluate(d).is_star)

    def test_c6(self):
        self.assertIsNone(two_bag_star(cycle(6)))


class RewriteTests(SimpleTestCase):
    def test_existing_edges_are_skipped(self):
        h, id_map = _rewrite(cycle(4), add=[(0, 2), (0, 1)])
        self.assertEqual(h.m, 5)
        self.assertEqual(id_map, {0: 0, 1: 1, 2: 2, 3: 3})

    def test_contract_then_remove(self):
        h, id_map = _rewrite(cycle(5), contract=[(1, 2)], remove=0)
        self.assertEqual(h, path(3))
        self.assertEqual(id_map, {1: 0, 2: 0, 3: 1, 4: 2})


class StepTraceTests(SimpleTestCase):
    def make_step(self):
        g = cycle(4)
        return Step(STEP_REMOVE_LEAF, LeafVertex(0, LeafType.TYPE3, (1, 2, 3)), g, g, {})

    def test_bound(self):
        trace = StepTrace(7, 12)
        self.assertEqual(trace.bound, 23)

    def test_record_past_bound(self):
        trace = StepTrace(1, 4)
        trace.record(self.make_step())
        with self.assertRaises(RecognitionError):
            trace.record(self.make_step())

    def test_lift_map_skips_absorbed(self):
        g = cycle(4)
        step = Step(STEP_CONTRACT_VA, LeafVertex(0, LeafType.TYPE3, (1, 2, 3)), g, g,
                    {0: 0, 1: 0, 2: 1, 3: 2}, frozenset({0}))
        self.assertEqual(step.lift_map(), {0: 1, 1: 2, 2: 3})


class TreeDraftTests(SimpleTestCase):
    def setUp(self):
        self.g = path(4)
        self.d = Decomposition.path(self.g, [{0, 1}, {1, 2}, {2, 3}])

    def test_round_trip(self):
        draft = TreeDraft.from_decomposition(self.d)
        self.assertEqual(draft.to_decomposition().bag_sets(), self.d.bag_sets())

    def test_path_between(self):
        draft = TreeDraft.from_decomposition(self.d)
        self.assertEqual(draft.path_between(0, 3), [0, 1, 2])
        self.assertEqual(draft.dominators(1), [1, 2])

    def test_discard_merges_emptied_bags(self):
        draft = TreeDraft.from_decomposition(self.d)
        draft.discard({0, 1})
        self.assertEqual(sorted(map(sorted, draft.to_decomposition().bag_sets())), [[2], [2, 3]])

    def test_attach_uses_a_fresh_id(self):
        draft = TreeDraft.from_decomposition(self.d)
        t = draft.attach({3}, 2)
        self.assertEqual(t, 3)
        self.assertTrue(validate(draft.to_decomposition()))

    def test_pull_together_extends_along_the_path(self):
        draft = TreeDraft.from_decomposition(self.d)
        node, pair = draft.pull_together(0, 2)
        self.assertIsNone(pair)
        self.assertLessEqual({0, 2}, draft.bag(node))

    def test_pull_together_falls_back_to_adjacent_pair(self):
        g = cycle(4)
        d = Decomposition.path(g, [{0, 1, 3}, {1, 2, 3}])
        draft = TreeDraft.from_decomposition(d)
        self.assertEqual(draft.pull_together(0, 2), (None, (0, 1)))

    def test_replay_needs_matching_graph(self):
        g = cycle(4)
        trace = StepTrace(4, 4)
        trace.steps.append(Step(STEP_REMOVE_LEAF, LeafVertex(0, LeafType.TYPE3, (1, 2, 3)), g, path(3), {}))
        with self.assertRaises(CertificateError):
            replay(trace, Decomposition.from_bags(g, [range(4)]))


class RecognizePlanarTests(SimpleTestCase):
    def assertStar(self, result, g):
        self.assertTrue(result.answer)
        self.assertEqual(result.decomposition.host, g)
        self.assertTrue(validate(result.decomposition))
        self.assertTrue(evaluate(result.decomposition).is_star)

    def test_c4(self):
        g = cycle(4)
        result = recognize_planar_tb1(g)
        self.assertStar(result, g)
        self.assertEqual(len(result.decomposition), 2)

    def test_double_apex_cycle(self):
        g = double_apex_cycle()
        self.assertStar(recognize_planar_tb1(g), g)

    def test_grid_2x3(self):
        g = grid(2, 3)
        self.assertStar(recognize_planar_tb1(g), g)

    def test_grid_4x4(self):
        result = recognize_planar_tb1(grid(4, 4))
        self.assertFalse(result.answer)
        self.assertIn('no-single-common-neighbour', result.detail)
        self.assertEqual(result.traces[0].outcome, 'no-single-common-neighbour')

    def test_wheel_contracts_then_replays(self):
        g = wheel(6)
        result = recognize_planar_tb1(g, check_invariants=True)
        self.assertStar(result, g)
        trace = result.traces[0]
        self.assertEqual([s.step for s in trace.steps], [STEP_CONTRACT_VA])
        self.assertEqual(trace.outcome, 'oracle')
        self.assertLessEqual(len(trace), trace.bound)
        self.assertEqual(trace.to_dict()['steps'][0]['context']['u'], 3)

    def test_cycle_is_rejected(self):
        self.assertFalse(recognize_planar_tb1(cycle(7)).answer)

    def test_jobs_do_not_change_the_answer(self):
        g = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 4)])
        one = recognize_planar_tb1(g, jobs=1)
        two = recognize_planar_tb1(g, jobs=2)
        self.assertTrue(one.answer)
        self.assertEqual(one.decomposition, two.decomposition)

    def test_agrees_with_networkx_planarity_on_non_planar_input(self):
        self.assertFalse(nx.check_planarity(complete(5).to_networkx())[0])
        with self.assertRaises(NotPlanarError):
            recognize_planar_tb1(complete(5))

    def test_cutoff_below_minimum(self):
        with self.assertRaises(PreconditionError):
            recognize_planar_tb1(cycle(4), cutoff=6)

    def test_disconnected(self):
        with self.assertRaises(DisconnectedGraphError):
            recognize_planar_tb1(Graph(4, [(0, 1), (2, 3)]))


class ConverseTests(SimpleTestCase):
    """One-step traces replayed from a star-decomposition of the rewritten graph."""

    def replay_one(self, label, leaf, g, d_bags, context, add=(), contract=(), absorbed=frozenset(), as_path=False):
        after, id_map = _rewrite(g, add=add, contract=contract)
        step = Step(label, leaf, g, after, id_map, absorbed, context=context)
        trace = StepTrace(g.n, g.m)
        trace.record(step)
        d = Decomposition.path(after, d_bags) if as_path else Decomposition.from_bags(after, d_bags)
        return replay(trace, d)

    def assertBreadthOne(self, d, g):
        self.assertEqual(d.host, g)
        self.assertTrue(check_axioms(d.host, d.bags, d.skeleton))
        metrics = evaluate(d)
        self.assertEqual(metrics.breadth, 1)
        self.assertTrue(metrics.is_star)

    def k23(self, *extra):
        # a=0, b=1, c=2, u=3 around the Type 3 leaf v=4
        return Graph(5, [(0, 1), (1, 2), (0, 3), (3, 2), (4, 0), (4, 2), *extra])

    def test_forced_edges_split_the_bag_of_v(self):
        g = self.k23()
        leaf = LeafVertex(4, LeafType.TYPE3, (0, 1, 2))
        d = self.replay_one(STEP_FORCE_EDGES, leaf, g, [range(5)], {'u': 3}, add=[(4, 3), (4, 1)])
        self.assertBreadthOne(d, g)
        self.assertEqual(sorted(map(sorted, d.bag_sets())), [[0, 1, 3, 4], [1, 2, 3, 4]])

    def test_forced_edges_keep_v_on_the_path(self):
        g = self.k23()
        leaf = LeafVertex(4, LeafType.TYPE3, (0, 1, 2))
        d = self.replay_one(STEP_FORCE_EDGES, leaf, g, [{0, 1, 3, 4}, {1, 2, 3, 4}], {'u': 3},
                            add=[(4, 3), (4, 1)], as_path=True)
        self.assertBreadthOne(d, g)
        self.assertEqual(len(d.occurrences(4)), 2)

    def test_forced_edges_reattach_v_next_to_its_path(self):
        g = self.k23((1, 3))
        leaf = LeafVertex(4, LeafType.TYPE3, (0, 1, 2))
        d = self.replay_one(STEP_FORCE_EDGES, leaf, g, [range(5)], {'u': 3}, add=[(4, 3), (4, 1)])
        self.assertBreadthOne(d, g)
        self.assertIn(frozenset({0, 2, 4}), d.bag_sets())

    def test_connect_b(self):
        # N(b) = {v, a, c, u}; x = 5 is b's partner on the separator cycle
        g = Graph(6, [(0, 1), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1), (4, 2), (5, 0), (5, 3)])
        leaf = LeafVertex(4, LeafType.TYPE2, (0, 1, 2))
        context = {'a': 0, 'b': 1, 'c': 2, 'u': 3, 'x': 5}
        after, _ = _rewrite(g, add=[(1, 5)], contract=[(5, 1)])
        d = self.replay_one(STEP_CONNECT_B, leaf, g, [after.vertices()], context,
                            add=[(1, 5)], contract=[(5, 1)], absorbed=frozenset({1}))
        self.assertBreadthOne(d, g)
        self.assertIn(g.closed_neighborhood(1), d.bag_sets())

    def test_contract_bx(self):
        # x = 5 is a common neighbour of b, a and u; 6 hangs off x and u
        g = Graph(7, [(0, 1), (1, 2), (2, 3), (1, 3), (4, 0), (4, 1), (4, 2),
                      (5, 0), (5, 1), (5, 3), (6, 5), (6, 3)])
        leaf = LeafVertex(4, LeafType.TYPE2, (0, 1, 2))
        context = {'a': 0, 'b': 1, 'c': 2, 'u': 3, 'x': 5}
        after, _ = _rewrite(g, contract=[(5, 1)])
        d = self.replay_one(STEP_CONTRACT_BX, leaf, g, [after.vertices()], context,
                            contract=[(5, 1)], absorbed=frozenset({1}))
        self.assertBreadthOne(d, g)
        self.assertEqual(sorted(map(sorted, d.bag_sets())), [[0, 1, 2, 3, 4, 5], [0, 3, 5, 6]])

    def test_add_yz(self):
        # the added edge 0-1 is what lets 0 dominate the first bag
        g = Graph(5, [(0, 2), (0, 4), (1, 2), (2, 3)])
        leaf = LeafVertex(4, LeafType.TYPE2, (0, 2, 3))
        d = self.replay_one(STEP_ADD_YZ, leaf, g, [{0, 1, 2, 4}, {1, 2, 3}], {'y': 0, 'z': 1},
                            add=[(0, 1)], as_path=True)
        self.assertBreadthOne(d, g)
        self.assertEqual(sorted(map(sorted, d.bag_sets())), [[0, 1, 2, 3], [0, 2, 4]])

    def test_prime_graph_that_forces_edges(self):
        g = Graph(8, [(0, 2), (0, 3), (0, 4), (0, 6), (0, 7), (1, 3), (1, 4), (1, 5), (2, 5),
                      (2, 7), (3, 5), (4, 5), (4, 7), (5, 6), (5, 7)])
        result = recognize_planar_tb1(g)
        self.assertTrue(result.answer)
        self.assertBreadthOne(result.decomposition, g)
        steps = [s.step for s in result.traces[0].steps]
        self.assertEqual(steps[0], STEP_FORCE_EDGES)
        self.assertEqual(result.traces[0].steps[0].context['u'], 0)
