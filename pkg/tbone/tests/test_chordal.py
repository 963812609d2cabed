from django.test import SimpleTestCase

from tbone.chordal import (
    atoms,
    chordality,
    clique_tree,
    constrained_bags,
    full_components,
    is_chordal,
    is_minimal_separator,
    is_perfect_elimination_ordering,
    is_prime,
    lex_bfs,
    maximal_cliques,
    minimal_triangulation,
)
from tbone.decomposition import validate
from tbone.exceptions import DisconnectedGraphError, NotChordalError, PreconditionError
from tbone.families import complete, cycle, diamond, gem, path
from tbone.graph import Graph


class ChordalityTests(SimpleTestCase):
    def test_complete_graph_is_chordal(self):
        result = chordality(complete(4))
        self.assertTrue(result.chordal)
        self.assertTrue(result.ordering.is_perfect)

    def test_cycles_are_not_chordal(self):
        self.assertFalse(is_chordal(cycle(4)))
        self.assertFalse(is_chordal(cycle(5)))

    def test_lex_bfs_on_path(self):
        self.assertEqual(lex_bfs(path(4)), [0, 1, 2, 3])

    def test_perfect_elimination_ordering(self):
        g = diamond()
        self.assertTrue(is_perfect_elimination_ordering(g, [0, 1, 2, 3]))
        self.assertFalse(is_perfect_elimination_ordering(g, [1, 0, 2, 3]))

    def test_minimal_triangulation_of_c4_adds_one_chord(self):
        h = minimal_triangulation(cycle(4))
        self.assertEqual(h.m, 5)
        self.assertTrue(is_chordal(h))


class CliqueTests(SimpleTestCase):
    def test_diamond_cliques(self):
        self.assertEqual(maximal_cliques(diamond()), [frozenset({0, 1, 2}), frozenset({1, 2, 3})])

    def test_needs_chordal_input(self):
        with self.assertRaises(NotChordalError):
            maximal_cliques(cycle(4))

    def test_tree_bags_are_edges(self):
        t = clique_tree(path(4))
        self.assertEqual(sorted(map(sorted, t.bag_sets())), [[0, 1], [1, 2], [2, 3]])
        self.assertTrue(validate(t))

    def test_single_vertex(self):
        t = clique_tree(Graph(1))
        self.assertEqual(t.bag_sets(), [frozenset({0})])

    def test_complete_graph_single_bag(self):
        t = clique_tree(complete(4))
        self.assertEqual(t.bag_sets(), [frozenset(range(4))])

    def test_gem_has_three_bags_with_apex(self):
        t = clique_tree(gem())
        self.assertEqual(len(t), 3)
        for bag in t.bag_sets():
            self.assertEqual(len(bag), 3)
            self.assertIn(4, bag)
        self.assertTrue(validate(t))


class SeparatorTests(SimpleTestCase):
    def test_opposite_vertices_of_c4(self):
        g = cycle(4)
        self.assertEqual(full_components(g, {0, 2}), [frozenset({1}), frozenset({3})])
        self.assertTrue(is_minimal_separator(g, {0, 2}))
        self.assertFalse(is_minimal_separator(g, {0, 1}))

    def test_c4_is_one_atom(self):
        result = atoms(cycle(4))
        self.assertTrue(result.is_prime)
        self.assertEqual(result.atoms, [frozenset(range(4))])
        self.assertTrue(is_prime(cycle(4)))

    def test_diamond_splits_on_shared_edge(self):
        result = atoms(diamond())
        self.assertEqual(sorted(map(sorted, result.atoms)), [[0, 1, 2], [1, 2, 3]])
        self.assertEqual(result.separators, [frozenset({1, 2})])
        self.assertEqual(result.glue, [(0, 1, 0)])
        self.assertFalse(is_prime(diamond()))

    def test_path_splits_on_cut_vertex(self):
        result = atoms(path(3))
        self.assertEqual(sorted(map(sorted, result.atoms)), [[0, 1], [1, 2]])
        self.assertEqual(result.separators, [frozenset({1})])

    def test_atoms_need_connected_graph(self):
        with self.assertRaises(DisconnectedGraphError):
            atoms(Graph(3, [(0, 1)]))

    def test_to_dict(self):
        data = atoms(path(3)).to_dict()
        self.assertEqual(data['separators'], [[1]])
        self.assertEqual(len(data['glue']), 1)


class ConstrainedBagsTests(SimpleTestCase):
    def test_path_edges(self):
        d = constrained_bags(path(3), [{0, 1}, {1, 2}])
        self.assertIsNotNone(d)
        self.assertTrue(validate(d))

    def test_c4_closed_neighbourhoods(self):
        g = cycle(4)
        d = constrained_bags(g, [g.closed_neighborhood(0), g.closed_neighborhood(2)])
        self.assertEqual(sorted(map(sorted, d.bag_sets())), [[0, 1, 3], [1, 2, 3]])

    def test_c6_closed_neighbourhoods(self):
        g = cycle(6)
        self.assertIsNone(constrained_bags(g, [g.closed_neighborhood(v) for v in (0, 2, 4)]))

    def test_repeated_set_gets_its_own_bag(self):
        d = constrained_bags(path(2), [{0, 1}, {0, 1}])
        self.assertEqual(len(d), 2)
        self.assertTrue(validate(d))

    def test_contained_member_rejected(self):
        with self.assertRaises(PreconditionError):
            constrained_bags(path(3), [{0, 1}, {0, 1, 2}])

    def test_empty_family(self):
        self.assertIsNone(constrained_bags(path(2), []))
