import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

import networkx as nx

from src.racg.cayley import cayley_ball, coset_partition
from src.racg.defining_graph import SimplicialGraph
from src.utils.error_handler import InputError, ResourceCapError
from tests.racg.fixtures import cycle, square_with_whisker


def brute_force_classes(ball, subset):
    """Group ball elements pairwise by whether g⁻¹h uses only letters of the star."""
    group = ball.group
    star = group.graph.star(subset)
    classes = set()
    for g in ball.elements:
        inverse = group.inverse(g)
        classes.add(frozenset(h for h in ball.elements if group.multiply(inverse, h).letters() <= star))
    return classes


class TestCayleyBall(unittest.TestCase):

    def test_radius_zero(self):
        """The ball of radius zero is the identity alone."""
        ball = cayley_ball(cycle(5), 0)
        self.assertEqual(len(ball), 1)
        self.assertEqual(len(ball.elements[0]), 0)

    def test_square_growth(self):
        """Over the square the ball of radius r has 2r² + 2r + 1 elements."""
        for r in range(7):
            ball = cayley_ball(cycle(4), r)
            self.assertEqual(len(ball), 2 * r * r + 2 * r + 1)
        self.assertEqual(cayley_ball(cycle(4), 3).sphere_sizes(), [1, 4, 8, 12])

    def test_finite_group(self):
        """A single edge gives the Klein four-group."""
        ball = cayley_ball(SimplicialGraph.build("ab", [("a", "b")]), 5)
        self.assertEqual(len(ball), 4)
        self.assertEqual(ball.sphere_sizes(), [1, 2, 1, 0, 0, 0])

    def test_ball_structure(self):
        """Graph distance from the identity is word length and the ball is closed under inverses."""
        ball = cayley_ball(square_with_whisker(), 3)
        identity = ball.group.identity()
        distances = nx.single_source_shortest_path_length(ball.graph.graph, identity)
        elements = set(ball.elements)
        for g in ball.elements:
            self.assertEqual(distances[g], len(g))
            self.assertIn(ball.group.inverse(g), elements)

    def test_cap(self):
        """Growing past the cap raises a resource error."""
        with self.assertRaises(ResourceCapError):
            cayley_ball(cycle(4), 3, cap=10)

    def test_negative_radius(self):
        """Negative radii are input errors."""
        with self.assertRaises(InputError):
            cayley_ball(cycle(4), -1)


class TestCosetPartition(unittest.TestCase):

    def test_full_star_is_one_class(self):
        """When the star is everything the ball is a single class."""
        ball = cayley_ball(cycle(4), 3)
        classes = coset_partition(ball, {"a", "c"})
        self.assertEqual(len(classes), 1)
        self.assertEqual(next(iter(classes.values())), frozenset(ball.elements))

    def test_matches_membership_oracle(self):
        """Classes agree with the pairwise membership test."""
        ball = cayley_ball(square_with_whisker(), 3)
        for subset in ({"a", "c"}, {"b", "d"}, {"b", "e"}, {"c", "e"}):
            classes = coset_partition(ball, subset)
            self.assertEqual(set(classes.values()), brute_force_classes(ball, subset))
            for representative, members in classes.items():
                self.assertIn(representative, members)
                self.assertEqual(representative, min(members, key=lambda g: (len(g), g)))

    def test_whisker_classes_use_e(self):
        """Outside the identity class, every representative for the square's star contains e."""
        ball = cayley_ball(square_with_whisker(), 3)
        classes = coset_partition(ball, {"a", "c"})
        self.assertGreater(len(classes), 1)
        for representative in classes:
            if len(representative):
                self.assertIn("e", representative.letters())


if __name__ == '__main__':
    unittest.main()
