"""Tests for scaling, translation, weighted sums and direct sums of entropies."""

import unittest

import numpy as np

from bregkit import (
    BGS,
    HCT,
    Burg,
    DimensionMismatch,
    DirectSumOf,
    DomainStatus,
    NonpositiveLambda,
    NormSpec,
    Quadratic,
    SemiEquivalenceViolated,
    direct_sum,
    scale_plus_linear,
    translate,
    weighted_sum,
)


class TestScalePlusLinear(unittest.TestCase):
    def setUp(self):
        self.base = BGS(dim=2)
        self.x = np.array([0.5, 2.0])
        self.y = np.array([1.5, 0.3])

    def test_divergence_scales(self):
        spec = scale_plus_linear(self.base, 2.5, [1.0, -3.0])
        self.assertAlmostEqual(
            spec.divergence_closed(self.x, self.y), 2.5 * self.base.divergence_closed(self.x, self.y), places=14
        )
        self.assertAlmostEqual(
            spec.divergence_generic(self.x, self.y), 2.5 * self.base.divergence_closed(self.x, self.y), places=12
        )

    def test_value_gains_linear_term(self):
        spec = scale_plus_linear(self.base, 2.0, [1.0, -3.0])
        expected = 2.0 * self.base.value(self.x) + 0.5 - 6.0
        self.assertAlmostEqual(spec.value(self.x), expected, places=14)

    def test_identity_scaling_returns_same_entropy(self):
        self.assertIs(scale_plus_linear(self.base, 1.0), self.base)

    def test_nonpositive_lambda(self):
        for lam in (0.0, -1.0):
            with self.subTest(lam=lam):
                with self.assertRaises(NonpositiveLambda):
                    scale_plus_linear(self.base, lam)

    def test_linear_term_dimension(self):
        with self.assertRaises(DimensionMismatch):
            scale_plus_linear(self.base, 2.0, [1.0])


class TestTranslate(unittest.TestCase):
    def test_zone_moves(self):
        spec = translate(BGS(dim=1), [1.0])
        self.assertIs(spec.classify([-0.5]), DomainStatus.INTERIOR)
        self.assertIs(spec.classify([-1.0]), DomainStatus.BOUNDARY_IN_DOMAIN)
        self.assertIs(spec.classify([-1.5]), DomainStatus.OUTSIDE_DOMAIN)

    def test_divergence_is_shifted(self):
        base = Burg(dim=2)
        z0 = np.array([0.25, -0.5])
        spec = translate(base, z0)
        x = np.array([1.0, 2.0])
        y = np.array([3.0, 0.75])
        self.assertEqual(spec.divergence_closed(x, y), base.divergence_closed(x + z0, y + z0))
        self.assertAlmostEqual(spec.divergence_generic(x, y), base.divergence_closed(x + z0, y + z0), places=12)


class TestWeightedSum(unittest.TestCase):
    def test_divergence_is_weighted(self):
        bgs = BGS(dim=2)
        quad = Quadratic.identity(2)
        spec = weighted_sum([(0.7, bgs), (1.3, quad)])
        x, y = [0.5, 2.0], [1.5, 0.3]
        expected = 0.7 * bgs.divergence_closed(x, y) + 1.3 * quad.divergence_closed(x, y)
        self.assertAlmostEqual(spec.divergence_closed(x, y), expected, places=13)
        self.assertAlmostEqual(spec.divergence_generic(x, y), expected, places=12)

    def test_zone_is_intersection(self):
        spec = weighted_sum([(1.0, BGS(dim=1)), (1.0, Burg(dim=1))])
        self.assertIs(spec.classify([0.0]), DomainStatus.OUTSIDE_DOMAIN)
        self.assertIs(spec.classify([0.1]), DomainStatus.INTERIOR)

    def test_rejects_mismatches(self):
        with self.assertRaises(DimensionMismatch):
            weighted_sum([(1.0, BGS(dim=1)), (1.0, BGS(dim=2))])
        with self.assertRaises(ValueError):
            weighted_sum([(1.0, BGS(dim=2)), (1.0, BGS(dim=2, norm=NormSpec.lp(1, 2)))])
        with self.assertRaises(NonpositiveLambda):
            weighted_sum([(0.0, BGS(dim=1))])
        with self.assertRaises(ValueError):
            weighted_sum([])


class TestDirectSum(unittest.TestCase):
    def test_blocks_add_up(self):
        bgs, burg = BGS(dim=1), Burg(dim=2)
        spec = direct_sum([bgs, burg], 1.0)
        self.assertIsInstance(spec, DirectSumOf)
        self.assertEqual(spec.dim, 3)
        self.assertEqual(spec.norm, NormSpec.euclidean(3))
        x = np.array([0.5, 1.0, 2.0])
        y = np.array([1.5, 0.5, 2.5])
        expected = bgs.divergence_closed(x[:1], y[:1]) + burg.divergence_closed(x[1:], y[1:])
        self.assertAlmostEqual(spec.divergence_closed(x, y), expected, places=14)
        self.assertAlmostEqual(spec.divergence_generic(x, y), expected, places=12)
        self.assertIs(spec.classify([0.0, 1.0, 1.0]), DomainStatus.BOUNDARY_IN_DOMAIN)
        self.assertIs(spec.classify([1.0, 0.0, 1.0]), DomainStatus.OUTSIDE_DOMAIN)

    def test_semi_equivalence_violated(self):
        with self.assertRaises(SemiEquivalenceViolated):
            direct_sum([BGS(dim=1), BGS(dim=1)], 1.5)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            direct_sum([], 1.0)
        with self.assertRaises(ValueError):
            direct_sum([BGS(dim=1)], 0.0)
        with self.assertRaises(DimensionMismatch):
            direct_sum([BGS(dim=1), BGS(dim=1)], 1.0, NormSpec.euclidean(3))


class TestVerdicts(unittest.TestCase):
    def test_wrappers_keep_verdicts(self):
        negative = HCT(q=-1.0, dim=2)
        self.assertIs(scale_plus_linear(negative, 2.0, [1.0, 0.0]).bregman_function, False)
        self.assertIs(translate(BGS(dim=2), [0.5, 0.5]).bregman_function, True)
        self.assertIs(translate(negative, [1.0, 1.0]).bounded_level_sets, False)

    def test_sums(self):
        spec = weighted_sum([(1.0, BGS(dim=1)), (2.0, Burg(dim=1))])
        meta = spec.metadata()
        self.assertIs(meta.bregman_function, True)
        self.assertIs(meta.sequentially_consistent, True)
        self.assertIs(meta.limiting_difference, True)
        mixed = weighted_sum([(1.0, HCT(q=-1.0, dim=1)), (1.0, Quadratic.identity(1))])
        self.assertIsNone(mixed.bregman_function)
        self.assertIsNone(mixed.sequentially_consistent)

    def test_direct_sum(self):
        spec = direct_sum([BGS(dim=1), Burg(dim=1)], 1.0, NormSpec.euclidean(2))
        self.assertIs(spec.bregman_function, True)
        spec = direct_sum([BGS(dim=1), HCT(q=-1.0, dim=1)], 1.0, NormSpec.euclidean(2))
        self.assertIsNone(spec.bregman_function)


if __name__ == "__main__":
    unittest.main()
