"""Tests for the suite registry and runner."""

import unittest

from bregkit import BGS, Burg, HCT, NormSpec, Quadratic, direct_sum
from bregkit.analysis import SUITE_NAMES, SuiteSettings, run_suite
from bregkit.analysis.suites import ALL_EXCLUDES, expand_suite, failed, label, with_norm


class TestSuiteSettings(unittest.TestCase):
    def test_defaults(self):
        settings = SuiteSettings()
        self.assertEqual(settings.seed, 42)
        self.assertEqual(settings.samples, 10_000)
        self.assertEqual(settings.tolerance("oracle"), 1e-10)

    def test_override(self):
        settings = SuiteSettings(tolerances={"oracle": 1e-3})
        self.assertEqual(settings.tolerance("oracle"), 1e-3)
        self.assertEqual(settings.sampler().count, 10_000)
        self.assertEqual(settings.sampler(50).count, 50)

    def test_validation(self):
        with self.assertRaises(ValueError):
            SuiteSettings(tolerances={"bogus": 1.0})
        with self.assertRaises(ValueError):
            SuiteSettings(mu_factor=0.0)


class TestRegistry(unittest.TestCase):
    def test_all_excludes_modulus(self):
        names = expand_suite("all")
        self.assertNotIn("modulus", names)
        self.assertNotIn("all", names)
        self.assertIn("witness", names)
        self.assertEqual(set(names) | set(ALL_EXCLUDES) | {"all"}, set(SUITE_NAMES))

    def test_unknown(self):
        with self.assertRaises(ValueError):
            expand_suite("bogus")

    def test_label(self):
        self.assertEqual(label(BGS(dim=2)), "bgs[n=2,lp:2]")
        self.assertEqual(label(HCT(q=3.0, dim=1, norm=NormSpec.lp(1, 1))), "hct(q=3)[n=1,lp:1]")

    def test_with_norm(self):
        l1 = NormSpec.lp(1, 2)
        self.assertEqual(with_norm(Burg(dim=2), l1).norm, l1)
        with self.assertRaises(ValueError):
            with_norm(direct_sum([BGS(dim=1), BGS(dim=1)], 1.0, NormSpec.euclidean(2)), l1)


class TestRunSuite(unittest.TestCase):
    def setUp(self):
        self.settings = SuiteSettings(samples=300, dims=(1,))

    def test_oracle(self):
        reports = run_suite("oracle", [BGS(dim=2)], self.settings)
        self.assertEqual(len(reports), 1)
        self.assertEqual(reports[0].probe, "oracle/bgs[n=2,lp:2]")
        self.assertTrue(reports[0].passed)
        self.assertEqual(reports[0].seed, 42)

    def test_reports_are_sorted(self):
        reports = run_suite("nonnegativity", [Quadratic.identity(2), BGS(dim=1)], self.settings)
        probes = [report.probe for report in reports]
        self.assertEqual(probes, sorted(probes))

    def test_corrupted_certificate_is_caught(self):
        spec = BGS(dim=1)
        honest = run_suite("strong_convexity", [spec], self.settings)
        self.assertTrue(honest)
        self.assertFalse(failed(honest))
        corrupted = SuiteSettings(samples=300, mu_factor=2.0)
        self.assertTrue(failed(run_suite("strong_convexity", [spec], corrupted)))

    def test_witness_suite(self):
        reports = run_suite("witness", [], SuiteSettings(samples=200, dims=(1,)))
        probes = {report.probe for report in reports}
        self.assertIn("witness/uc/bgs[n=1]", probes)
        self.assertIn("witness/sc/hct", probes)
        self.assertIn("witness/negq_levelset[n=1]", probes)
        self.assertFalse(failed(reports))

    def test_combinators(self):
        reports = run_suite("combinators", [BGS(dim=2)], self.settings)
        probes = {report.probe for report in reports}
        self.assertIn("combinators/bgs[n=2,lp:2]/scale", probes)
        self.assertIn("combinators/bgs[n=2,lp:2]/direct_sum", probes)
        self.assertFalse(failed(reports))

    def test_levelset_and_gauge(self):
        spec = BGS(dim=2)
        reports = run_suite("levelset", [spec], self.settings) + run_suite("gauge", [spec], self.settings)
        self.assertEqual(len(reports), 5)
        self.assertFalse(failed(reports))

    def test_levelset_skips_without_gauge(self):
        self.assertEqual(run_suite("levelset", [HCT(q=-1.0, dim=1)], self.settings), [])

    def test_blowup_skips_smooth_free_entropies(self):
        self.assertEqual(run_suite("blowup", [Quadratic.identity(1)], self.settings), [])
        self.assertEqual(run_suite("blowup", [HCT(q=2.0, dim=1)], self.settings), [])
        reports = run_suite("blowup", [Burg(dim=2)], self.settings)
        self.assertEqual(len(reports), 1)
        self.assertTrue(reports[0].passed)

    def test_limiting(self):
        reports = run_suite("limiting", [Burg(dim=2)], self.settings)
        self.assertEqual(len(reports), 10)
        self.assertFalse(failed(reports))


if __name__ == "__main__":
    unittest.main()
