"""Tests for ambient norms and their comparison constants."""

import math
import unittest

import numpy as np

from bregkit import DimensionMismatch, NormSpec, equivalence_constants, sample_unit_sphere


class TestNormSpec(unittest.TestCase):
    """Evaluation and parsing of lp and mixed norms."""

    def test_lp_evaluate(self):
        self.assertEqual(NormSpec.lp(2, dim=2).evaluate([3.0, 4.0]), 5.0)
        self.assertEqual(NormSpec.lp(1, dim=3).evaluate([1.0, -2.0, 3.0]), 6.0)
        self.assertEqual(NormSpec.lp(math.inf, dim=3).evaluate([1.0, -7.0, 3.0]), 7.0)

    def test_mixed_evaluate(self):
        norm = NormSpec.mixed(2, dim=4)
        self.assertEqual(norm.evaluate([1.0, -1.0, 3.0, 4.0]), 7.0)

    def test_batch_evaluate(self):
        values = NormSpec.euclidean(2).evaluate(np.array([[3.0, 4.0], [0.0, 1.0]]))
        np.testing.assert_array_equal(values, [5.0, 1.0])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            NormSpec.lp(2, dim=3).evaluate([1.0, 2.0])

    def test_parse(self):
        self.assertEqual(NormSpec.parse("lp:inf", 3).p, math.inf)
        self.assertEqual(NormSpec.parse("lp:1.5", 2).label, "lp:1.5")
        norm = NormSpec.parse("mixed:2", 4)
        self.assertEqual(norm.split, 2)
        self.assertEqual(norm.n_split, 1)
        self.assertEqual(norm.label, "mixed:2")

    def test_parse_rejects_bad_text(self):
        for text in ("lp", "foo:2", "mixed:3", "lp:0.5", "mixed:6"):
            with self.subTest(text=text):
                with self.assertRaises(ValueError):
                    NormSpec.parse(text, 4)


class TestEquivalenceConstants(unittest.TestCase):
    """Closed-form constants c2, c_inf and gamma."""

    def test_l1(self):
        constants = equivalence_constants(NormSpec.lp(1, dim=4))
        self.assertAlmostEqual(constants.c2, 0.5)
        self.assertEqual(constants.c_inf, 1.0)
        self.assertAlmostEqual(constants.gamma, 4.0)

    def test_euclidean(self):
        constants = equivalence_constants(NormSpec.euclidean(3))
        self.assertEqual(constants.c2, 1.0)
        self.assertAlmostEqual(constants.gamma, math.sqrt(3.0))

    def test_linf(self):
        constants = equivalence_constants(NormSpec.lp(math.inf, dim=5))
        self.assertEqual((constants.c2, constants.c_inf, constants.gamma), (1.0, 1.0, 1.0))

    def test_mixed(self):
        constants = equivalence_constants(NormSpec.mixed(4, dim=6))
        self.assertAlmostEqual(constants.c2, 1.0 / (2.0 * math.sqrt(2.0)))
        self.assertAlmostEqual(constants.gamma, 4.0 + math.sqrt(2.0))

    def test_to_dict(self):
        self.assertEqual(
            set(equivalence_constants(NormSpec.euclidean(1)).to_dict()), {"c2", "c_inf", "gamma"}
        )


class TestUnitSphere(unittest.TestCase):
    """Sampling of unit-norm directions."""

    def test_rejection_sampling(self):
        norm = NormSpec.lp(1, dim=3)
        dirs = sample_unit_sphere(norm, np.random.default_rng(0), 50)
        self.assertEqual(dirs.shape, (50, 3))
        np.testing.assert_allclose(norm.evaluate(dirs), 1.0, rtol=1e-12)

    def test_high_dimension(self):
        norm = NormSpec.mixed(2, dim=8)
        dirs = sample_unit_sphere(norm, np.random.default_rng(1), 20)
        self.assertEqual(dirs.shape, (20, 8))
        np.testing.assert_allclose(norm.evaluate(dirs), 1.0, rtol=1e-12)


if __name__ == "__main__":
    unittest.main()
