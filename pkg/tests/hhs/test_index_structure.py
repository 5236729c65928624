import json
import os
import random
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

from src.hhs.index_structure import IndexStructure, complexity, rank
from src.hhs.isolation import standard_relhyp_skeleton
from src.utils.error_handler import InputError
from tests.hhs.fixtures import random_valid_structure


def product_region():
    """S over W, with U ⊥ V inside W."""
    return IndexStructure.build(
        ["S", "W", "U", "V"],
        None,
        [("W", "S"), ("U", "W"), ("V", "W")],
        [("U", "V")],
    )


class TestIndexStructure(unittest.TestCase):

    def test_nesting_is_reflexive_and_transitive(self):
        """Nesting is closed reflexively and transitively."""
        s = product_region()
        self.assertTrue(s.nested("U", "S"))
        self.assertTrue(s.nested("U", "U"))
        self.assertFalse(s.nested("S", "U"))
        self.assertEqual(s.down["W"], frozenset({"W", "U", "V"}))

    def test_orthogonality_closes_downward(self):
        """A domain nested in one side of an orthogonal pair is orthogonal to the other side."""
        s = IndexStructure.build(
            ["S", "A", "B", "A1"],
            None,
            [("A", "S"), ("B", "S"), ("A1", "A")],
            [("A", "B")],
        )
        self.assertTrue(s.orthogonal("A1", "B"))
        self.assertTrue(s.orthogonal("B", "A1"))
        self.assertEqual(s.orthogonal_pairs, [("A", "B"), ("A1", "B")])

    def test_transversality_is_the_residue(self):
        """Incomparable, non-orthogonal domains are transverse."""
        s = IndexStructure.build(["S", "A", "B"], None, [("A", "S"), ("B", "S")])
        self.assertTrue(s.transverse("A", "B"))
        self.assertFalse(s.transverse("A", "S"))
        self.assertFalse(s.transverse("A", "A"))

    def test_maximal_domain(self):
        """The unique ⊑-maximal domain is reported."""
        self.assertEqual(product_region().maximal, "S")
        two_tops = IndexStructure.build(["A", "B"])
        self.assertIsNone(two_tops.maximal)
        self.assertEqual(two_tops.maximal_domains, ("A", "B"))

    def test_unknown_reference_rejected(self):
        """A nest pair naming an undeclared domain is an input error."""
        with self.assertRaises(InputError):
            IndexStructure.build(["S"], None, [("X", "S")])

    def test_duplicate_ids_rejected(self):
        """Duplicate domain ids are an input error."""
        with self.assertRaises(InputError):
            IndexStructure.build(["S", "S"])

    def test_complexity(self):
        """Complexity is the number of domains in the longest chain."""
        self.assertEqual(complexity(product_region()), 3)
        self.assertEqual(complexity(standard_relhyp_skeleton(4)), 2)
        self.assertEqual(complexity(IndexStructure.build(["S"])), 1)

    def test_complexity_rejects_cycles(self):
        """A nesting cycle has no longest chain."""
        cyclic = IndexStructure.build(["A", "B"], None, [("A", "B"), ("B", "A")])
        with self.assertRaises(InputError):
            complexity(cyclic)

    def test_rank_counts_unbounded_orthogonal_domains(self):
        """Rank is the largest pairwise orthogonal family of unbounded domains."""
        size, witness = rank(product_region())
        self.assertEqual(size, 2)
        self.assertEqual(witness, frozenset({"U", "V"}))

    def test_rank_ignores_bounded_domains(self):
        """Bounded domains never count toward rank."""
        s = IndexStructure.build(
            ["S", "W", "U", "V"],
            {"U": False},
            [("W", "S"), ("U", "W"), ("V", "W")],
            [("U", "V")],
        )
        self.assertEqual(rank(s)[0], 1)

    def test_skeleton_rank_one(self):
        """A relatively hyperbolic skeleton has rank one."""
        self.assertEqual(rank(standard_relhyp_skeleton(3))[0], 1)
        self.assertEqual(rank(standard_relhyp_skeleton(0))[0], 1)

    def test_restricted_keeps_closed_relations(self):
        """Deleting a middle domain keeps nesting through it."""
        s = product_region().restricted(["S", "U", "V"])
        self.assertTrue(s.nested("U", "S"))
        self.assertTrue(s.orthogonal("U", "V"))

    def test_document_round_trip(self):
        """A structure re-parses to an equal value."""
        s = product_region()
        again = IndexStructure.from_json(s.to_json())
        self.assertEqual(again.to_document(), s.to_document())
        self.assertEqual(again, s)

    def test_schema_error_names_the_pair(self):
        """A malformed nest entry reports its JSON path."""
        document = product_region().to_document()
        document["nest"].append(["U"])
        with self.assertRaises(InputError) as ctx:
            IndexStructure.from_document(document)
        self.assertIn("nest[", str(ctx.exception))

    def test_dangling_id_names_the_pair(self):
        """An unknown id in an orth pair reports the pair index."""
        document = product_region().to_document()
        document["orth"].append(["U", "Z"])
        with self.assertRaises(InputError) as ctx:
            IndexStructure.from_document(document)
        self.assertEqual(ctx.exception.path, "orth[1]")

    def test_invalid_json_reports_line(self):
        """Undecodable JSON becomes an input error with a line number."""
        with self.assertRaises(InputError) as ctx:
            IndexStructure.from_json('{\n"domains": [\n')
        self.assertIsNotNone(ctx.exception.line)

    def test_relabeled(self):
        """Relabelling preserves every relation."""
        s = product_region().relabeled({"S": "top", "W": "w", "U": "u", "V": "v"})
        self.assertTrue(s.orthogonal("u", "v"))
        self.assertTrue(s.nested("u", "top"))
        self.assertEqual(json.loads(s.to_json())["orth"], [["u", "v"]])


class TestRandomStructures(unittest.TestCase):

    def test_relabeling_invariance(self):
        """Renaming domains changes neither rank nor complexity."""
        for seed in range(1000):
            s, _ = random_valid_structure(seed)
            names = list(s.domains)
            random.Random(seed).shuffle(names)
            renamed = s.relabeled({d: f"x{names.index(d)}" for d in s.domains})
            self.assertEqual(complexity(renamed), complexity(s))
            self.assertEqual(rank(renamed)[0], rank(s)[0])

    def test_deleting_a_domain_never_increases_rank_or_complexity(self):
        """Every single-domain deletion keeps rank and complexity at most their old values."""
        for seed in range(1000):
            s, _ = random_valid_structure(seed)
            size, depth = rank(s)[0], complexity(s)
            for d in s.domains:
                smaller = s.restricted([x for x in s.domains if x != d])
                self.assertLessEqual(rank(smaller)[0], size, f"seed {seed}, deleted {d}")
                self.assertLessEqual(complexity(smaller), depth, f"seed {seed}, deleted {d}")


if __name__ == '__main__':
    unittest.main()
