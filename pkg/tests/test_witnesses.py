"""Tests for the explicit failure witnesses."""

import math
import unittest

import numpy as np

from bregkit import HCT, GammaTooSmall, NotInZone, QOutOfRange, SOutOfRange
from bregkit.analysis import (
    WitnessKind,
    hct_negq_levelset_witness,
    sc_failure_witness,
    uc_failure_witness,
)


class TestUniformConvexityWitness(unittest.TestCase):
    def test_bgs_value(self):
        witness = uc_failure_witness("bgs", 10.0)
        self.assertAlmostEqual(witness.b_expected, 0.0468982, places=7)
        self.assertAlmostEqual(witness.spec.divergence_closed(witness.x, witness.y), witness.b_expected, places=12)
        self.assertEqual(witness.distance, 1.0)

    def test_divergence_decays_while_distance_stays(self):
        for kind in ("bgs", "burg", "iterlog"):
            with self.subTest(kind=kind):
                values = [uc_failure_witness(kind, s).b_expected for s in (10.0, 100.0, 1000.0)]
                self.assertGreater(values[0], values[1])
                self.assertGreater(values[1], values[2])
                self.assertEqual(uc_failure_witness(kind, 1000.0).distance, 1.0)

    def test_closed_form_matches_oracle(self):
        for kind in WitnessKind:
            with self.subTest(kind=kind.value):
                x, y, expected = uc_failure_witness(kind, 50.0, dim=3)
                spec = uc_failure_witness(kind, 50.0, dim=3).spec
                self.assertEqual(spec.dim, 3)
                self.assertTrue(math.isclose(spec.divergence_closed(x, y), expected, rel_tol=1e-10))
                self.assertTrue(math.isclose(spec.divergence_generic(x, y), expected, rel_tol=1e-6))

    def test_hct_half_distance_grows(self):
        witness = uc_failure_witness(WitnessKind.HCT_HALF, 100.0)
        self.assertEqual(witness.distance, 10.0)
        self.assertEqual(witness.spec.q, 0.5)

    def test_padding(self):
        witness = uc_failure_witness("iterlog", 5.0, dim=2)
        np.testing.assert_array_equal(witness.x, [5.0, 2.0])
        np.testing.assert_array_equal(witness.y, [6.0, 2.0])

    def test_parameter_range(self):
        with self.assertRaises(SOutOfRange):
            uc_failure_witness("bgs", 0.5)
        with self.assertRaises(SOutOfRange):
            uc_failure_witness("iterlog", 1.0)
        with self.assertRaises(SOutOfRange):
            uc_failure_witness("burg", math.inf)
        with self.assertRaises(ValueError):
            uc_failure_witness("shannon", 10.0)


class TestStrongConvexityWitness(unittest.TestCase):
    def test_large_q(self):
        witness = sc_failure_witness(3.0, 0.1)
        self.assertAlmostEqual(witness.ratio, 0.4, places=12)
        self.assertAlmostEqual(witness.ratio_expected, 0.4, places=12)
        smaller = sc_failure_witness(3.0, 0.01)
        self.assertLess(smaller.ratio, witness.ratio)

    def test_small_q(self):
        for q in (0.5, 1.5):
            with self.subTest(q=q):
                near = sc_failure_witness(q, 10.0)
                far = sc_failure_witness(q, 1000.0)
                self.assertTrue(math.isclose(near.ratio, near.ratio_expected, rel_tol=1e-9))
                self.assertLess(far.ratio, near.ratio)

    def test_ranges(self):
        for q in (-1.0, 0.0, 1.0, 2.0, math.inf):
            with self.subTest(q=q):
                with self.assertRaises(QOutOfRange):
                    sc_failure_witness(q, 0.5)
        with self.assertRaises(SOutOfRange):
            sc_failure_witness(3.0, 1.0)
        with self.assertRaises(SOutOfRange):
            sc_failure_witness(1.5, 1.0)


class TestNegativeQLevelSet(unittest.TestCase):
    def test_threshold(self):
        t0 = hct_negq_levelset_witness(-1.0, [1.0], 1.0)
        self.assertAlmostEqual(t0, 1.0 / (1.0 + math.sqrt(2.0)), places=8)
        spec = HCT(q=-1.0)
        for t in (t0, 1.0, 10.0, 1e6):
            self.assertLessEqual(spec.divergence_closed([1.0], [t]), 1.0)

    def test_threshold_in_two_dimensions(self):
        x = [1.0, 3.0]
        t0 = hct_negq_levelset_witness(-1.0, x, 4.0)
        spec = HCT(q=-1.0, dim=2)
        self.assertLessEqual(spec.divergence_closed(x, [t0, t0]), 4.0 * (1.0 + 1e-12))
        self.assertLessEqual(spec.divergence_closed(x, [1e8, 1e8]), 4.0)

    def test_errors(self):
        with self.assertRaises(QOutOfRange):
            hct_negq_levelset_witness(0.5, [1.0], 1.0)
        with self.assertRaises(NotInZone):
            hct_negq_levelset_witness(-1.0, [0.5], 1.0)
        with self.assertRaises(GammaTooSmall):
            hct_negq_levelset_witness(-1.0, [1.0], 0.5)


if __name__ == "__main__":
    unittest.main()
