"""
Unit tests for the rule numbering convention and the XOR group of rules.
"""

import unittest
from functools import reduce
from math import comb

from lincell.rules import (
    FUNDAMENTAL_RULES,
    OFFSETS,
    TRANSLATION_RULES,
    all_rules,
    check_rule,
    decompose,
    group_of,
    half_plane_normal,
    is_half_plane,
    is_one_sided,
    offsets,
    opposite_direction,
    rules_in_group,
    translation_rule,
    xor_rules,
)


class TestDecompose(unittest.TestCase):
    """Tests for decompose and group_of."""

    def test_worked_decompositions(self):
        """Test the decompositions quoted for rules 13, 0, 35 and 171."""
        self.assertEqual(decompose(13), {1, 4, 8})
        self.assertEqual(decompose(0), set())
        self.assertEqual(decompose(35), {1, 2, 32})
        self.assertEqual(decompose(171), {1, 2, 8, 32, 128})

    def test_decompose_folds_back(self):
        """Test that the XOR of every decomposition gives the rule back."""
        for rule in all_rules():
            self.assertEqual(reduce(lambda a, b: a ^ b, decompose(rule), 0), rule)

    def test_group_numbers(self):
        """Test the group numbers of rules 171, 170, 0 and 511."""
        self.assertEqual(group_of(171), 5)
        self.assertEqual(group_of(170), 4)
        self.assertEqual(group_of(0), 0)
        self.assertEqual(group_of(511), 9)

    def test_group_sizes(self):
        """Test that group N holds C(9, N) rules."""
        for group in range(10):
            members = rules_in_group(group)
            self.assertEqual(len(members), comb(9, group))
            self.assertTrue(all(group_of(r) == group for r in members))
        self.assertEqual(rules_in_group(1), list(FUNDAMENTAL_RULES))

    def test_group_two_members(self):
        """Test that group 2 is exactly the listed set of 36 two-term rules."""
        expected = {
            3, 5, 9, 17, 33, 65, 129, 257,
            6, 10, 18, 34, 66, 130, 258,
            12, 20, 36, 68, 132, 260,
            24, 40, 72, 136, 264,
            48, 80, 144, 272,
            96, 160, 288,
            192, 320,
            384,
        }
        self.assertEqual(len(expected), 36)
        self.assertEqual(set(rules_in_group(2)), expected)
        self.assertEqual(rules_in_group(2), sorted(expected))


    def test_rejects_out_of_range(self):
        """Test that rules outside 0..511 and non-integers are rejected."""
        with self.assertRaises(ValueError):
            check_rule(512)
        with self.assertRaises(ValueError):
            check_rule(-1)
        with self.assertRaises(TypeError):
            check_rule("3")
        with self.assertRaises(TypeError):
            check_rule(True)
        with self.assertRaises(ValueError):
            rules_in_group(10)


class TestXorGroup(unittest.TestCase):
    """Tests for the abelian group structure of rules under XOR."""

    def test_identity_and_self_inverse(self):
        """Test that 0 is the identity and every rule is its own inverse."""
        for rule in all_rules():
            self.assertEqual(xor_rules(rule, rule), 0)
            self.assertEqual(xor_rules(rule, 0), rule)

    def test_worked_sum(self):
        """Test that rule 1 xor rule 2 is rule 3."""
        self.assertEqual(xor_rules(1, 2), 3)

    def test_commutative_and_associative(self):
        """Test commutativity and associativity on a spread of rules."""
        sample = [0, 1, 3, 7, 34, 170, 257, 511]
        for a in sample:
            for b in sample:
                self.assertEqual(xor_rules(a, b), xor_rules(b, a))
                for c in sample:
                    self.assertEqual(xor_rules(xor_rules(a, b), c), xor_rules(a, xor_rules(b, c)))


class TestOffsets(unittest.TestCase):
    """Tests for the weight to neighbour offset table."""

    def test_table_is_a_bijection(self):
        """Test that the nine weights map onto the nine Moore offsets."""
        expected = {(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1)}
        self.assertEqual(set(OFFSETS.values()), expected)
        self.assertEqual(len(OFFSETS), 9)

    def test_offsets_in_weight_order(self):
        """Test the offsets of rules 1, 2 and 170."""
        self.assertEqual(offsets(1), [(0, 0)])
        self.assertEqual(offsets(2), [(0, 1)])
        self.assertEqual(offsets(170), [(0, 1), (1, 0), (0, -1), (-1, 0)])

    def test_translation_table(self):
        """Test that every direction has an opposite pointing the other way."""
        self.assertEqual(translation_rule("Top"), 8)
        self.assertEqual(translation_rule("bottom_left"), 256)
        for direction, rule in TRANSLATION_RULES.items():
            back = TRANSLATION_RULES[opposite_direction(direction)]
            dr, dc = OFFSETS[rule]
            self.assertEqual(OFFSETS[back], (-dr, -dc))
        with self.assertRaises(ValueError):
            translation_rule("up")

    def test_one_sided_rules(self):
        """Test the one-sided predicate on a few rules."""
        self.assertTrue(is_one_sided(1))
        self.assertTrue(is_one_sided(31))
        self.assertTrue(is_one_sided(481))
        self.assertFalse(is_one_sided(30))
        self.assertFalse(is_one_sided(35))

    def test_half_plane_rules(self):
        """Test the half-plane predicate and its count over all rules."""
        self.assertTrue(is_half_plane(1))
        self.assertTrue(is_half_plane(37))
        self.assertTrue(is_half_plane(1 + 2 + 4 + 8 + 16))
        self.assertFalse(is_half_plane(1 + 2 + 32))
        self.assertFalse(is_half_plane(1 + 2 + 4 + 8 + 16 + 32))
        self.assertFalse(is_half_plane(36))
        self.assertEqual(half_plane_normal(37), (2, -1))
        self.assertEqual(half_plane_normal(1), (0, 1))
        one_sided = {rule for rule in all_rules() if is_one_sided(rule)}
        half_plane = {rule for rule in all_rules() if is_half_plane(rule)}
        self.assertEqual(len(one_sided), 31)
        self.assertEqual(len(half_plane), 65)
        self.assertTrue(one_sided < half_plane)


if __name__ == "__main__":
    unittest.main()
