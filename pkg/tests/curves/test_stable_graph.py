import json
import os
import random
import shutil
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from src.curves.stable_graph import (
    StableGraph, canonical_form, canonical_graph, connected_subsets, load_stable_graph,
)
from src.utils.error_handler import InputError


def theta(genera=(0, 0)):
    """Two pieces joined by three curves."""
    return StableGraph.build(genera, [0, 0], [(0, 1), (0, 1), (1, 0)])


def sample_graphs():
    return [
        theta(),
        StableGraph.build([0, 0], [2, 2], [(0, 1)]),
        StableGraph.build([0, 1, 0, 0], [1, 0, 0, 2], [(0, 1), (1, 2), (2, 2), (2, 3), (3, 0)]),
        StableGraph.build([0, 0, 0, 0], [0, 1, 1, 1], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        StableGraph.build([1, 0, 1], [0, 1, 0], [(0, 1), (1, 2), (0, 2), (1, 1)]),
    ]


class TestStableGraph(unittest.TestCase):

    def test_counts(self):
        """Genus adds the first Betti number to the vertex genera."""
        g = theta()
        self.assertEqual(g.first_betti, 2)
        self.assertEqual(g.genus, 2)
        self.assertEqual(g.punctures, 0)
        self.assertEqual(g.valence(0), 3)
        self.assertEqual(g.multiplicity, [[0, 3], [3, 0]])

        loop = StableGraph.build([0], [1], [(0, 0)])
        self.assertEqual(loop.genus, 1)
        self.assertEqual(loop.valence(0), 3)
        self.assertEqual(loop.multiplicity, [[1]])

    def test_valid_graphs_have_no_problems(self):
        """Hyperbolic pieces on a connected graph pass validation."""
        for g in sample_graphs():
            self.assertEqual(g.problems(), [])
        StableGraph.trivial(2, 0).validate(2, 0)

    def test_problems(self):
        """Annular pieces and disconnected graphs are reported."""
        annulus = StableGraph.build([0, 0], [1, 1], [(0, 1)])
        self.assertEqual(len(annulus.problems()), 2)
        apart = StableGraph.build([1, 1], [0, 0], [])
        self.assertIn("graph is disconnected", apart.problems())
        with self.assertRaises(InputError):
            theta().validate(genus=3)
        with self.assertRaises(InputError):
            theta().validate(punctures=1)

    def test_missing_vertex(self):
        """Edges must stay inside the vertex range."""
        with self.assertRaises(InputError):
            StableGraph.build([0], [3], [(0, 1)])

    def test_quotient_preserves_surface(self):
        """Merging blocks turns internal edges into genus."""
        for g in sample_graphs():
            merged = g.quotient([frozenset(range(g.size))])
            self.assertEqual(merged, StableGraph.trivial(g.genus, g.punctures))
        g = sample_graphs()[2]
        q = g.quotient([frozenset({0, 1}), frozenset({2}), frozenset({3})])
        self.assertEqual((q.genus, q.punctures), (g.genus, g.punctures))
        self.assertEqual(q.size, 3)
        with self.assertRaises(InputError):
            g.quotient([frozenset({0, 1})])

    def test_filled_genus(self):
        """A connected subset carries its vertex genera plus its own cycles."""
        g = sample_graphs()[2]
        self.assertEqual(g.filled_genus(frozenset({3})), 0)
        self.assertEqual(g.filled_genus(frozenset({2})), 1)
        self.assertEqual(g.filled_genus(frozenset({1, 2})), 2)
        self.assertEqual(g.filled_genus(frozenset({0, 1, 2, 3})), g.genus)

    def test_connected_subsets(self):
        """A path on three vertices has six connected subsets."""
        path = StableGraph.build([0, 0, 0], [2, 1, 2], [(0, 1), (1, 2)])
        subsets = connected_subsets(path)
        self.assertEqual(len(subsets), 6)
        self.assertNotIn(frozenset({0, 2}), subsets)
        self.assertEqual(len(connected_subsets(path, limit=2)), 5)


class TestCanonicalForm(unittest.TestCase):

    def test_relabeling_invariance(self):
        """Every relabeling has the same key and the same canonical graph."""
        rng = random.Random(5)
        for g in sample_graphs():
            key, _ = canonical_form(g)
            for _ in range(20):
                permutation = list(range(g.size))
                rng.shuffle(permutation)
                h = g.relabeled(permutation)
                self.assertEqual(canonical_form(h)[0], key)
                self.assertEqual(canonical_graph(h), canonical_graph(g))

    def test_distinguishes_non_isomorphic(self):
        """Moving legs to a different vertex changes the key."""
        first = StableGraph.build([0, 0, 0], [1, 0, 1], [(0, 1), (1, 2), (0, 2)])
        second = StableGraph.build([0, 0, 0], [1, 1, 0], [(0, 1), (1, 2), (1, 2)])
        self.assertNotEqual(canonical_form(first)[0], canonical_form(second)[0])

    def test_marks_are_respected(self):
        """Marks separate vertices that the bare graph cannot."""
        g = StableGraph.build([0, 0], [2, 2], [(0, 1)])
        self.assertEqual(canonical_form(g, [1, 0])[0], canonical_form(g, [0, 1])[0])
        self.assertNotEqual(canonical_form(g, [1, 0])[0], canonical_form(g, [1, 1])[0])

    def test_order_realizes_key(self):
        """The returned order is a permutation of the vertices."""
        for g in sample_graphs():
            _, order = canonical_form(g)
            self.assertEqual(sorted(order), list(range(g.size)))


class TestStableGraphDocuments(unittest.TestCase):

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def test_document_round_trip(self):
        """Documents rebuild an equal graph."""
        for g in sample_graphs():
            self.assertEqual(StableGraph.from_document(g.to_document()), g)

    def test_schema_errors_have_paths(self):
        """Negative genus and dangling edges name their location."""
        with self.assertRaises(InputError) as ctx:
            StableGraph.from_document({"vertices": [{"genus": -1}]})
        self.assertEqual(ctx.exception.path, "vertices[0].genus")
        with self.assertRaises(InputError) as ctx:
            StableGraph.from_document({"vertices": [{"genus": 1}], "edges": [[0, 4]]})
        self.assertEqual(ctx.exception.path, "edges[0]")

    def test_load_from_file(self):
        """Files are read as JSON documents; bad JSON reports its line."""
        path = os.path.join(self.test_dir, "graph.json")
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(theta().to_document(), f)
        self.assertEqual(load_stable_graph(path), theta())

        broken = os.path.join(self.test_dir, "broken.json")
        with open(broken, 'w', encoding='utf-8') as f:
            f.write('{\n  "vertices": [\n  oops\n}')
        with self.assertRaises(InputError) as ctx:
            load_stable_graph(broken)
        self.assertEqual(ctx.exception.line, 3)

        with self.assertRaises(FileNotFoundError):
            load_stable_graph(os.path.join(self.test_dir, "missing.json"))


if __name__ == '__main__':
    unittest.main()
