import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from src.curves.enumeration import check_surface, degenerations, enumerate_stable_graphs
from src.curves.stable_graph import StableGraph, canonical_form
from src.curves.surfaces import SurfaceType, WitnessKind, check_kind_range, exclusion_reason
from src.utils.error_handler import InputError, ResourceCapError


class TestEnumerateStableGraphs(unittest.TestCase):

    def test_known_counts(self):
        """Counts of stable graphs with unlabeled legs for small surfaces."""
        expected = {(1, 1): 2, (0, 4): 2, (0, 5): 3, (1, 2): 5, (2, 0): 7}
        for (g, n), count in expected.items():
            self.assertEqual(len(enumerate_stable_graphs(SurfaceType(g, n))), count, f"S_({g},{n})")

    def test_graphs_are_valid_and_distinct(self):
        """Every graph is stable on the right surface and appears once."""
        for g, n in [(0, 6), (1, 3), (2, 1), (3, 0)]:
            surface = SurfaceType(g, n)
            graphs = enumerate_stable_graphs(surface)
            keys = set()
            for graph in graphs:
                graph.validate(g, n)
                keys.add(canonical_form(graph)[0])
            self.assertEqual(len(keys), len(graphs))
            self.assertEqual(graphs[0], StableGraph.trivial(g, n))
            self.assertEqual(max(len(graph.edges) for graph in graphs), surface.complexity)

    def test_ordered_by_edge_count(self):
        """Graphs come out level by level."""
        graphs = enumerate_stable_graphs(SurfaceType(1, 3))
        counts = [len(graph.edges) for graph in graphs]
        self.assertEqual(counts, sorted(counts))

    def test_torus_has_only_the_trivial_graph(self):
        """The closed torus is accepted and has no stable degeneration."""
        self.assertEqual(enumerate_stable_graphs(SurfaceType(1, 0)), [StableGraph.trivial(1, 0)])

    def test_degenerations_add_one_curve(self):
        """A degeneration keeps the surface and adds exactly one edge."""
        base = StableGraph.build([1, 0], [0, 3], [(0, 1)])
        children = list(degenerations(base))
        self.assertTrue(children)
        for child in children:
            self.assertEqual(len(child.edges), 2)
            self.assertEqual((child.genus, child.punctures), (base.genus, base.punctures))
            self.assertEqual(child.problems(), [])

    def test_surface_checks(self):
        """Surfaces without curves are rejected and large ones hit the bound."""
        with self.assertRaises(InputError):
            check_surface(SurfaceType(0, 3), 10)
        with self.assertRaises(InputError):
            enumerate_stable_graphs(SurfaceType(0, 2))
        with self.assertRaises(ResourceCapError):
            enumerate_stable_graphs(SurfaceType(3, 5))
        with self.assertRaises(ResourceCapError):
            check_surface(SurfaceType(2, 2), 5)


class TestSurfaces(unittest.TestCase):

    def test_parse(self):
        """Surface types are read from 'g,n'."""
        surface = SurfaceType.parse("2, 1")
        self.assertEqual(surface, SurfaceType(2, 1))
        self.assertEqual(str(surface), "S_(2,1)")
        self.assertEqual(surface.complexity, 4)
        for text in ("2", "a,b", "1,-1", "1,2,3"):
            with self.assertRaises(InputError):
                SurfaceType.parse(text)
        with self.assertRaises(InputError):
            SurfaceType(-1, 2)

    def test_kinds(self):
        """Kinds parse case-insensitively."""
        self.assertIs(WitnessKind.parse("SEP"), WitnessKind.SEPARATING)
        self.assertIs(WitnessKind.parse("pants"), WitnessKind.PANTS)
        with self.assertRaises(InputError):
            WitnessKind.parse("arc")

    def test_exclusions(self):
        """Each kind has its own surface range."""
        self.assertIn("excluded", exclusion_reason(WitnessKind.SEPARATING, SurfaceType(2, 1)))
        self.assertIn("undefined", exclusion_reason(WitnessKind.SEPARATING, SurfaceType(1, 1)))
        self.assertIsNone(exclusion_reason(WitnessKind.SEPARATING, SurfaceType(3, 1)))
        self.assertIsNone(exclusion_reason(WitnessKind.PANTS, SurfaceType(0, 4)))
        self.assertIsNotNone(exclusion_reason(WitnessKind.PANTS, SurfaceType(0, 3)))
        self.assertIsNone(exclusion_reason(WitnessKind.CUT, SurfaceType(2, 0)))
        self.assertIsNotNone(exclusion_reason(WitnessKind.CUT, SurfaceType(2, 1)))
        with self.assertRaises(InputError):
            check_kind_range(WitnessKind.SEPARATING, SurfaceType(0, 4))


if __name__ == '__main__':
    unittest.main()
