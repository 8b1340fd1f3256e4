"""Tests for the domain rules of the generic engine and the concrete entropies."""

import math
import unittest

import numpy as np

from bregkit import (
    BGS,
    HCT,
    AlphaBeta,
    Beta,
    Burg,
    DimensionMismatch,
    DomainStatus,
    Ell2Overflow,
    Ell2Type,
    IteratedLog,
    L2Lp,
    NormSpec,
    NotInInterior,
    QOutOfRange,
    Quadratic,
    ell2_blocks,
    translated_iterated_log,
)


class TestDomainRules(unittest.TestCase):
    """Extended-real conventions shared by every entropy."""

    def setUp(self):
        self.bgs = BGS(dim=2)

    def test_closed_form_example(self):
        self.assertEqual(self.bgs.divergence_closed([0.0, 1.0], [1.0, 1.0]), 1.0)

    def test_generic_example(self):
        self.assertAlmostEqual(BGS(dim=1).divergence_generic([2.0], [1.0]), 0.3862943611198906, places=15)

    def test_x_outside_domain_is_infinite(self):
        self.assertEqual(self.bgs.divergence_closed([-1.0, 1.0], [1.0, 1.0]), math.inf)
        self.assertEqual(self.bgs.divergence_generic([-1.0, 1.0], [1.0, 1.0]), math.inf)
        self.assertEqual(self.bgs.value([-1.0, 1.0]), math.inf)

    def test_y_off_zone_is_infinite(self):
        self.assertEqual(self.bgs.divergence_closed([1.0, 1.0], [0.0, 1.0]), math.inf)
        self.assertEqual(self.bgs.divergence_generic([1.0, 1.0], [0.0, 1.0]), math.inf)

    def test_equal_points_give_zero(self):
        self.assertEqual(self.bgs.divergence_closed([0.3, 2.0], [0.3, 2.0]), 0.0)
        self.assertEqual(self.bgs.divergence_generic([0.3, 2.0], [0.3, 2.0]), 0.0)

    def test_boundary_x_is_finite(self):
        value = self.bgs.divergence_closed([0.0, 0.0], [1.0, 2.0])
        self.assertEqual(value, 3.0)

    def test_classify(self):
        self.assertIs(self.bgs.classify([1.0, 1.0]), DomainStatus.INTERIOR)
        self.assertIs(self.bgs.classify([0.0, 1.0]), DomainStatus.BOUNDARY_IN_DOMAIN)
        self.assertIs(self.bgs.classify([-0.1, 1.0]), DomainStatus.OUTSIDE_DOMAIN)
        self.assertIs(Burg(dim=1).classify([0.0]), DomainStatus.OUTSIDE_DOMAIN)

    def test_gradient_needs_interior(self):
        with self.assertRaises(NotInInterior):
            self.bgs.grad([0.0, 1.0])
        with self.assertRaises(NotInInterior):
            self.bgs.hessian_quadform([0.0, 1.0], [1.0, 0.0])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            self.bgs.value([1.0])
        with self.assertRaises(DimensionMismatch):
            self.bgs.divergence_closed([1.0, 1.0], [1.0, 1.0, 1.0])

    def test_non_finite_input(self):
        with self.assertRaises(ValueError):
            self.bgs.value([math.nan, 1.0])

    def test_three_point_residual(self):
        residual = self.bgs.three_point_residual([0.5, 2.0], [1.0, 1.5], [3.0, 0.2])
        self.assertAlmostEqual(residual, 0.0, places=12)

    def test_zone_describe(self):
        self.assertEqual(self.bgs.zone().describe(), "[0,inf)^2")
        self.assertEqual(Burg(dim=1).zone().describe(), "(0,inf)^1")
        self.assertEqual(Quadratic.identity(1).zone().describe(), "R^1")

    def test_metadata(self):
        meta = HCT(q=2.0, dim=1).metadata()
        self.assertFalse(meta.essentially_smooth)
        self.assertTrue(meta.dom_closed)
        self.assertEqual(meta.to_dict()["zone"], "[0,inf)^1")
        self.assertFalse(Burg(dim=1).metadata().dom_closed)

    def test_hct_verdicts_by_q(self):
        table = {
            2.0: (True, True, True, True),
            3.0: (True, True, True, True),
            1.5: (True, True, True, True),
            0.5: (True, True, True, True),
            -1.0: (False, None, None, False),
            -0.5: (False, None, None, False),
        }
        for q, expected in table.items():
            with self.subTest(q=q):
                meta = HCT(q=q, dim=2).metadata()
                got = (
                    meta.bregman_function,
                    meta.sequentially_consistent,
                    meta.limiting_difference,
                    meta.bounded_level_sets,
                )
                self.assertEqual(got, expected)

    def test_catalog_verdicts(self):
        specs = [
            BGS(dim=2),
            Burg(dim=2),
            IteratedLog(dim=2),
            Beta(beta=0.0, dim=2),
            Beta(beta=2.0, dim=2),
            AlphaBeta(alpha=1.0, beta=0.5, dim=2),
            L2Lp(p=1.5, dim=2),
            Quadratic.identity(2),
            Ell2Type(n_split=0, pairs=2),
        ]
        for spec in specs:
            with self.subTest(entropy=spec.name):
                flags = spec.metadata().to_dict()
                self.assertIs(flags["bregman_function"], True)
                self.assertIs(flags["sequentially_consistent"], True)
                self.assertIs(flags["limiting_difference"], True)
                self.assertIs(flags["bounded_level_sets"], True)


class TestCatalog(unittest.TestCase):
    """Values, gradients and closed forms of the concrete entropies."""

    def assertClosedMatchesGeneric(self, spec, x, y, places=10):
        self.assertAlmostEqual(spec.divergence_closed(x, y), spec.divergence_generic(x, y), places=places)

    def test_hct_quadratic_case(self):
        spec = HCT(q=2.0, dim=2)
        self.assertEqual(spec.divergence_closed([1.0, 2.0], [3.0, 5.0]), 13.0)
        self.assertEqual(spec.divergence_generic([1.0, 2.0], [3.0, 5.0]), 13.0)

    def test_hct_general_q(self):
        for q in (-1.0, 0.5, 1.5, 3.0):
            with self.subTest(q=q):
                self.assertClosedMatchesGeneric(HCT(q=q, dim=2), [0.5, 2.0], [1.5, 0.7])

    def test_hct_rejects_q(self):
        for q in (0.0, 1.0, math.inf):
            with self.subTest(q=q):
                with self.assertRaises(QOutOfRange):
                    HCT(q=q)

    def test_hct_negative_q_open_domain(self):
        spec = HCT(q=-1.0, dim=1)
        self.assertIs(spec.classify([0.0]), DomainStatus.OUTSIDE_DOMAIN)
        self.assertTrue(spec.metadata().essentially_smooth)

    def test_hct_hessian(self):
        self.assertAlmostEqual(HCT(q=3.0, dim=1).hessian_quadform([2.0], [1.0]), 6.0)
        self.assertAlmostEqual(HCT(q=-1.0, dim=1).hessian_quadform([2.0], [1.0]), 0.125)

    def test_bgs_hessian(self):
        self.assertEqual(BGS(dim=1).hessian_quadform([2.0], [1.0]), 0.5)

    def test_burg(self):
        spec = Burg(dim=2)
        self.assertAlmostEqual(spec.value([1.0, math.e]), -1.0)
        self.assertAlmostEqual(
            Burg(dim=1).divergence_closed([1.0], [2.0]), math.log(2.0) + 0.5 - 1.0, places=15
        )
        self.assertClosedMatchesGeneric(spec, [0.3, 4.0], [2.0, 0.5])

    def test_iterated_log(self):
        spec = IteratedLog(dim=1)
        expected = math.log(2.0) + (1.0 / math.e - 1.0) / 2.0
        self.assertAlmostEqual(spec.divergence_closed([math.e], [math.e**2]), expected, places=14)
        self.assertIs(spec.classify([1.0]), DomainStatus.OUTSIDE_DOMAIN)
        self.assertClosedMatchesGeneric(IteratedLog(dim=2), [1.5, 4.0], [3.0, 1.2])

    def test_translated_iterated_log(self):
        spec = translated_iterated_log(dim=1)
        self.assertIs(spec.classify([0.5]), DomainStatus.INTERIOR)
        self.assertIs(spec.classify([0.0]), DomainStatus.OUTSIDE_DOMAIN)
        self.assertAlmostEqual(spec.value([0.5]), -math.log(math.log(1.5)))

    def test_beta_family(self):
        self.assertAlmostEqual(Beta(beta=2.0).divergence_closed([3.0], [1.0]), 2.0)
        kl = BGS(dim=2).divergence_closed([0.5, 2.0], [1.0, 1.5])
        self.assertAlmostEqual(Beta(beta=1.0, dim=2).divergence_closed([0.5, 2.0], [1.0, 1.5]), kl)
        burg = Burg(dim=2).divergence_closed([0.5, 2.0], [1.0, 1.5])
        self.assertAlmostEqual(Beta(beta=0.0, dim=2).divergence_closed([0.5, 2.0], [1.0, 1.5]), burg)
        self.assertClosedMatchesGeneric(Beta(beta=0.5, dim=2), [0.5, 2.0], [1.0, 1.5])
        self.assertEqual(Beta(beta=0.5).divergence_closed([0.0], [1.0]), Beta(beta=0.5).divergence_generic([0.0], [1.0]))
        with self.assertRaises(QOutOfRange):
            Beta(beta=-0.5)

    def test_alpha_beta(self):
        for alpha in (1.0, 2.0, 3.5):
            with self.subTest(alpha=alpha):
                self.assertClosedMatchesGeneric(AlphaBeta(alpha=alpha, beta=0.5, dim=2), [0.2, 3.0], [1.0, 1.7])
        with self.assertRaises(QOutOfRange):
            AlphaBeta(alpha=0.5, beta=0.5)
        with self.assertRaises(QOutOfRange):
            AlphaBeta(alpha=2.0, beta=1.0)

    def test_l2lp(self):
        self.assertAlmostEqual(L2Lp(p=2.0, dim=2).divergence_closed([1.0, 2.0], [0.0, 0.0]), 2.5)
        spec = L2Lp(p=1.5, dim=2)
        self.assertEqual(spec.norm, NormSpec.lp(1.5, 2))
        self.assertClosedMatchesGeneric(spec, [1.0, -2.0], [0.5, 3.0])
        for p in (1.0, 2.5):
            with self.subTest(p=p):
                with self.assertRaises(QOutOfRange):
                    L2Lp(p=p)

    def test_quadratic(self):
        spec = Quadratic.identity(2)
        self.assertEqual(spec.divergence_closed([1.0, 2.0], [0.0, 0.0]), 2.5)
        skew = Quadratic([[2.0, 1.0], [0.0, 2.0]])
        np.testing.assert_array_equal(skew.matrix, [[2.0, 0.5], [0.5, 2.0]])
        self.assertAlmostEqual(skew.min_eigenvalue, 1.5)
        with self.assertRaises(ValueError):
            Quadratic([[1.0, 0.0], [0.0, -1.0]])
        with self.assertRaises(ValueError):
            Quadratic([[1.0, 0.0]])

    def test_random_spd_is_seeded(self):
        a = Quadratic.random_spd(3, seed=11)
        b = Quadratic.random_spd(3, seed=11)
        np.testing.assert_array_equal(a.matrix, b.matrix)
        self.assertGreaterEqual(a.min_eigenvalue, 0.5 - 1e-12)

    def test_ell2_type(self):
        spec = Ell2Type(n_split=1, pairs=2)
        self.assertEqual(spec.dim, 4)
        self.assertEqual(spec.norm, NormSpec.mixed(2, 4))
        self.assertEqual(spec.value(np.zeros(4)), 0.0)
        self.assertClosedMatchesGeneric(spec, [0.1, -0.3, 0.4, 0.2], [-0.2, 0.1, 0.0, 0.5])
        self.assertEqual(spec.probe_radius, 1.0)
        with self.assertRaises(ValueError):
            Ell2Type(n_split=3, pairs=2)

    def test_ell2_overflow(self):
        with self.assertRaises(Ell2Overflow):
            Ell2Type(pairs=1).value([20.0, 10.0])

    def test_ell2_blocks_match(self):
        x = np.array([0.1, -0.3, 0.4, 0.2])
        y = np.array([-0.2, 0.1, 0.0, 0.5])
        blocks = ell2_blocks(1, 2)
        self.assertAlmostEqual(
            blocks.divergence_closed(x, y), Ell2Type(n_split=1, pairs=2).divergence_closed(x, y), places=12
        )
        self.assertEqual(blocks.norm, NormSpec.mixed(2, 4))


if __name__ == "__main__":
    unittest.main()
