"""Tests for run configuration loading and the entropy registry."""

import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from bregkit import BGS, ConfigError, Quadratic
from bregkit.config import (
    DEFAULT_SEED,
    acceptance_catalog,
    default_seed,
    parse_vector,
    resolve_config,
)


@patch("bregkit.config.load_dotenv", lambda: None)
class TestResolveConfig(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)

    def _write(self, text: str) -> Path:
        path = Path(self._tmp.name) / "run.json"
        path.write_text(text, encoding="utf-8")
        return path

    def test_defaults(self):
        config = resolve_config()
        self.assertEqual(config.entropy, "bgs")
        self.assertEqual(config.seed, DEFAULT_SEED)
        self.assertEqual(config.suite, "all")
        self.assertEqual(config.format, "json")

    def test_environment_seed(self):
        with patch.dict(os.environ, {"BREGKIT_SEED": "7"}):
            self.assertEqual(default_seed(), 7)
            self.assertEqual(resolve_config().seed, 7)
            self.assertEqual(resolve_config(overrides={"seed": 3}).seed, 3)

    def test_invalid_environment_seed(self):
        with patch.dict(os.environ, {"BREGKIT_SEED": "seven"}):
            with self.assertRaises(ConfigError) as ctx:
                resolve_config()
        self.assertEqual(ctx.exception.location, "BREGKIT_SEED")

    def test_out_of_range_environment_seed(self):
        for raw in ("-1", str(2**64)):
            with self.subTest(raw=raw):
                with patch.dict(os.environ, {"BREGKIT_SEED": raw}):
                    with self.assertRaises(ConfigError) as ctx:
                        resolve_config()
                self.assertEqual(ctx.exception.location, "BREGKIT_SEED")
        with patch.dict(os.environ, {"BREGKIT_SEED": str(2**64 - 1)}):
            self.assertEqual(default_seed(), 2**64 - 1)

    def test_flags_override_file(self):
        path = self._write(json.dumps({"entropy": "burg", "seed": 5, "dim": 2}))
        config = resolve_config(path, {"seed": 9, "entropy": None})
        self.assertEqual(config.entropy, "burg")
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.dim, 2)

    def test_json_syntax_error_is_located(self):
        path = self._write('{\n  "seed": ,\n}\n')
        with self.assertRaises(ConfigError) as ctx:
            resolve_config(path)
        self.assertTrue(ctx.exception.location.startswith(f"{path}:2:"))

    def test_unknown_key_is_located(self):
        path = self._write(json.dumps({"bogus": 1}))
        with self.assertRaises(ConfigError) as ctx:
            resolve_config(path)
        self.assertEqual(ctx.exception.location, f"{path}:bogus")

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            resolve_config(Path(self._tmp.name) / "absent.json")

    def test_field_errors(self):
        cases = [
            ({"seed": -1}, "seed"),
            ({"norm": "bogus:3"}, "norm"),
            ({"tolerances": {"nope": 1.0}}, "tolerances"),
            ({"entropy": "gauss"}, "entropy"),
            ({"x": "1,a"}, "x"),
            ({"samples": 0}, "samples"),
        ]
        for overrides, location in cases:
            with self.subTest(overrides=overrides):
                with self.assertRaises(ConfigError) as ctx:
                    resolve_config(overrides=overrides)
                self.assertEqual(ctx.exception.location, location)

    def test_vectors(self):
        config = resolve_config(overrides={"x": "1,2.5", "y": 3})
        self.assertEqual(config.x, [1.0, 2.5])
        self.assertEqual(config.y, [3.0])


@patch("bregkit.config.load_dotenv", lambda: None)
class TestBuildEntropies(unittest.TestCase):
    def test_single(self):
        spec = resolve_config(overrides={"entropy": "hct", "q": 3.0, "dim": 2}).build_entropy()
        self.assertEqual(spec.name, "hct(q=3)")
        self.assertEqual(spec.dim, 2)

    def test_norm(self):
        spec = resolve_config(overrides={"norm": "lp:1", "dim": 3}).build_entropy()
        self.assertEqual(spec.norm.label, "lp:1")

    def test_quadratic_defaults_to_identity(self):
        spec = resolve_config(overrides={"entropy": "quadratic", "dim": 2}).build_entropy()
        self.assertIsInstance(spec, Quadratic)
        self.assertAlmostEqual(spec.divergence_closed([1.0, 0.0], [0.0, 0.0]), 0.5)

    def test_ell2(self):
        spec = resolve_config(overrides={"entropy": "ell2", "pairs": 2, "n_split": 1}).build_entropy()
        self.assertEqual(spec.dim, 4)

    def test_wrappers(self):
        config = resolve_config(
            overrides={"wrappers": [{"scale": 2.0}, {"translate": [1.0]}]}
        )
        spec = config.build_entropy()
        expected = 2.0 * BGS().divergence_closed([2.0], [3.0])
        self.assertAlmostEqual(spec.divergence_closed([1.0], [2.0]), expected, places=12)

    def test_all(self):
        config = resolve_config(overrides={"entropy": "all", "dims": [1]})
        self.assertEqual(len(config.build_entropies()), 18)
        with self.assertRaises(ConfigError):
            config.build_entropy()

    def test_invalid_parameter(self):
        with self.assertRaises(ConfigError) as ctx:
            resolve_config(overrides={"entropy": "hct", "q": 1.0}).build_entropy()
        self.assertEqual(ctx.exception.location, "entropy")

    def test_settings(self):
        settings = resolve_config(overrides={"samples": 50, "mu_factor": 2.0}).settings()
        self.assertEqual(settings.samples, 50)
        self.assertEqual(settings.mu_factor, 2.0)


class TestHelpers(unittest.TestCase):
    def test_parse_vector(self):
        self.assertEqual(parse_vector("1, -2,3e-1"), [1.0, -2.0, 0.3])
        with self.assertRaises(ValueError):
            parse_vector("1,,2")
        with self.assertRaises(ValueError):
            parse_vector("inf")

    def test_catalog_is_deterministic(self):
        first = acceptance_catalog((2,), seed=3)
        second = acceptance_catalog((2,), seed=3)
        self.assertEqual([s.name for s in first], [s.name for s in second])
        self.assertEqual(len(acceptance_catalog((1, 2, 5))), 50)


if __name__ == "__main__":
    unittest.main()
