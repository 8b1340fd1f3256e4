"""Tests for documented certificates, relative gauges and the set descriptors they live on."""

import math
import unittest

import numpy as np

from bregkit import (
    BGS,
    HCT,
    BallSet,
    BoxSet,
    Burg,
    EmptyPair,
    Ell2Type,
    GaugeFamily,
    GaugeSpec,
    IteratedLog,
    L2Lp,
    NoDocumentedGauge,
    NoDocumentedParameter,
    NormSpec,
    NotInDomain,
    NotInZone,
    PointSet,
    Quadratic,
    ShellSet,
    StrongConvexityCertificate,
    burg_rx,
    documented_gauge,
    documented_strong_convexity,
    scale_plus_linear,
)


class TestStrongConvexity(unittest.TestCase):
    """Documented parameters mu on norm balls."""

    def test_bgs(self):
        cert = documented_strong_convexity(BGS(dim=2), 10.0)
        self.assertAlmostEqual(cert.mu, 0.1)
        self.assertEqual(cert.region.radius, 10.0)
        self.assertIn("c2^2", cert.provenance)

    def test_bgs_l1(self):
        cert = documented_strong_convexity(BGS(dim=4, norm=NormSpec.lp(1, 4)), 2.0)
        self.assertAlmostEqual(cert.mu, 0.25 / 2.0)

    def test_burg(self):
        self.assertAlmostEqual(documented_strong_convexity(Burg(dim=1), 2.0).mu, 0.25)

    def test_hct(self):
        self.assertAlmostEqual(documented_strong_convexity(HCT(q=2.0, dim=3), 5.0).mu, 2.0)
        self.assertAlmostEqual(documented_strong_convexity(HCT(q=0.5, dim=1), 4.0).mu, 0.0625)
        self.assertAlmostEqual(documented_strong_convexity(HCT(q=3.0, dim=1), 5.0, eps_floor=0.1).mu, 0.3)

    def test_hct_above_two_needs_floor(self):
        with self.assertRaises(NoDocumentedParameter):
            documented_strong_convexity(HCT(q=3.0, dim=1), 5.0)

    def test_whole_space_entropies(self):
        self.assertAlmostEqual(documented_strong_convexity(L2Lp(p=1.5, dim=2), 1.0).mu, 0.5)
        self.assertAlmostEqual(documented_strong_convexity(Quadratic.identity(2), 1.0).mu, 1.0)
        self.assertEqual(documented_strong_convexity(Ell2Type(n_split=0, pairs=2), 1.0).mu, 4.0)
        self.assertEqual(documented_strong_convexity(Ell2Type(n_split=2, pairs=4), 1.0).mu, 0.5)

    def test_scaled(self):
        spec = scale_plus_linear(BGS(dim=2), 3.0, [1.0, 1.0])
        self.assertAlmostEqual(documented_strong_convexity(spec, 10.0).mu, 0.3)

    def test_iterated_log_needs_room(self):
        with self.assertRaises(EmptyPair):
            documented_strong_convexity(IteratedLog(dim=1), 0.5)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            documented_strong_convexity(BGS(dim=1), 0.0)
        with self.assertRaises(ValueError):
            documented_strong_convexity(BGS(dim=1), 1.0, eps_floor=0.0)

    def test_certificate(self):
        cert = documented_strong_convexity(BGS(dim=1), 5.0)
        doubled = cert.scaled(2.0)
        self.assertAlmostEqual(doubled.mu, 2.0 * cert.mu)
        self.assertTrue(doubled.provenance.startswith("2 x"))
        self.assertEqual(set(cert.to_dict()), {"set", "mu", "provenance"})
        with self.assertRaises(ValueError):
            StrongConvexityCertificate(region=cert.region, mu=0.0, provenance="none")


class TestGauges(unittest.TestCase):
    """Documented relative gauges and their pairs of sets."""

    def test_bgs(self):
        gauge, pair = documented_gauge(BGS(dim=1), [1.0])
        self.assertIs(gauge.family, GaugeFamily.LINEAR)
        self.assertAlmostEqual(gauge.coefficient, 0.25)
        self.assertAlmostEqual(pair.s2.radius, 2.0)
        np.testing.assert_array_equal(pair.s1.point, [1.0])

    def test_burg(self):
        gauge, pair = documented_gauge(Burg(dim=1), [1.0])
        self.assertIs(gauge.family, GaugeFamily.LOG)
        self.assertEqual(pair.s2.radius, burg_rx([1.0], NormSpec.euclidean(1)).r_x)

    def test_burg_needs_positive_point(self):
        with self.assertRaises(NotInDomain):
            documented_gauge(Burg(dim=1), [0.0])

    def test_outside_domain(self):
        with self.assertRaises(NotInDomain):
            documented_gauge(BGS(dim=1), [-1.0])

    def test_iterated_log_is_conjectured(self):
        with self.assertRaises(NoDocumentedGauge):
            documented_gauge(IteratedLog(dim=1), [2.0])
        gauge, _ = documented_gauge(IteratedLog(dim=1), [2.0], conjectured=True)
        self.assertTrue(gauge.conjectured)

    def test_hct_above_two(self):
        with self.assertRaises(NoDocumentedGauge):
            documented_gauge(HCT(q=3.0, dim=1), [1.0])
        gauge, pair = documented_gauge(HCT(q=3.0, dim=1), [1.0], eps_floor=0.1)
        self.assertIs(gauge.family, GaugeFamily.QUADRATIC)
        self.assertAlmostEqual(gauge.coefficient, 0.3)
        self.assertEqual(pair.s2.floor, 0.1)
        with self.assertRaises(NotInZone):
            documented_gauge(HCT(q=3.0, dim=1), [0.05], eps_floor=0.1)

    def test_hct_negative_q_decays(self):
        gauge, _ = documented_gauge(HCT(q=-1.0, dim=1), [1.0])
        self.assertFalse(gauge.increasing)

    def test_whole_space_gauge(self):
        gauge, pair = documented_gauge(Quadratic.identity(2), [1.0, 1.0])
        self.assertIs(gauge.family, GaugeFamily.QUADRATIC)
        self.assertEqual(pair.s2.radius, 0.0)


class TestBurgRadius(unittest.TestCase):
    def test_radius(self):
        result = burg_rx([1.0], NormSpec.euclidean(1))
        self.assertEqual(result.t1, 4.0**8)
        self.assertEqual(result.r_x, max(result.t1, 2.0 * result.t2, 2.0))
        excess = 0.5 * math.log(result.t2 / 2.0) - 4.0 - 0.25 * math.log1p(result.t2)
        self.assertGreater(excess, 0.0)

    def test_needs_positive_point(self):
        with self.assertRaises(NotInZone):
            burg_rx([0.0, 1.0], NormSpec.euclidean(2))


class TestGaugeSpec(unittest.TestCase):
    def test_values(self):
        self.assertEqual(GaugeSpec.linear(2.0)(3.0), 6.0)
        self.assertEqual(GaugeSpec.quadratic(2.0)(3.0), 9.0)
        self.assertAlmostEqual(GaugeSpec.log(0.25)(math.e - 1.0), 0.25)
        self.assertEqual(GaugeSpec.power(1.0, -1.0)(0.0), 0.0)

    def test_inverse(self):
        psi = GaugeSpec.log(0.25)
        self.assertAlmostEqual(float(psi.inverse(psi(3.0))), 3.0)
        self.assertAlmostEqual(GaugeSpec.quadratic(2.0).inverse(9.0), 3.0)
        with self.assertRaises(NoDocumentedGauge):
            GaugeSpec.power(1.0, -1.0).inverse(1.0)
        with self.assertRaises(ValueError):
            GaugeSpec.linear(1.0).inverse(-1.0)

    def test_validation(self):
        with self.assertRaises(ValueError):
            GaugeSpec.linear(0.0)
        with self.assertRaises(ValueError):
            GaugeSpec.power(1.0, 0.0)

    def test_scaled_and_describe(self):
        self.assertEqual(GaugeSpec.linear(2.0).scaled(1.5).coefficient, 3.0)
        self.assertIn("[conjectured]", GaugeSpec.iterated_log().describe())
        self.assertEqual(GaugeSpec.log(0.25).to_dict()["family"], "log")


class TestSets(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(3)

    def test_point_set(self):
        points = PointSet([1.0, 2.0]).sample(self.rng, 4)
        self.assertEqual(points.shape, (4, 2))
        self.assertTrue(np.all(PointSet([1.0, 2.0]).contains(points)))

    def test_box_set(self):
        box = BoxSet.cube(2, 0.0, 1.0)
        self.assertEqual(box.describe(), "[0,1]^2")
        self.assertTrue(np.all(box.contains(box.sample(self.rng, 100))))
        with self.assertRaises(EmptyPair):
            BoxSet([1.0], [0.0])

    def test_ball_set(self):
        ball = BallSet(BGS(dim=2).zone(), 3.0, NormSpec.euclidean(2))
        points = ball.sample(self.rng, 500)
        self.assertEqual(points.shape, (500, 2))
        self.assertTrue(np.all(ball.contains(points)))

    def test_floored_ball(self):
        ball = BallSet(BGS(dim=2).zone(), 3.0, NormSpec.euclidean(2), floor=0.5)
        points = ball.sample(self.rng, 200)
        self.assertTrue(np.all(points >= 0.5))
        with self.assertRaises(EmptyPair):
            BallSet(BGS(dim=2).zone(), 1.0, NormSpec.euclidean(2), floor=1.0)

    def test_shell_set(self):
        shell = ShellSet(Burg(dim=2).zone(), NormSpec.euclidean(2), 4.0)
        points = shell.sample(self.rng, 300)
        self.assertEqual(points.shape, (300, 2))
        self.assertTrue(np.all(np.linalg.norm(points, axis=1) > 4.0))
        self.assertTrue(np.all(points > 0.0))
        self.assertFalse(shell.bounded)


if __name__ == "__main__":
    unittest.main()
