"""End-to-end runs over the acceptance catalog at a reduced sample count."""

import importlib.util
import io
import json
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
from unittest.mock import patch

import pytest
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from bregkit.analysis import SuiteSettings, run_suite
from bregkit.cli import EXIT_OK, EXIT_VIOLATION, main
from bregkit.config import acceptance_catalog

SAMPLES = "300"
SCRIPT = Path(__file__).resolve().parents[1] / "scripts" / "run_acceptance.py"


class ReportRecord(BaseModel):
    """One object of the JSON report array."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    probe: str
    seed: int
    samples: int = Field(ge=0)
    violations: int = Field(ge=0)
    worst_margin: Union[float, str]
    witness: Optional[Dict[str, Any]]
    passed: bool = Field(alias="pass")


def load_script():
    spec = importlib.util.spec_from_file_location("run_acceptance", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.mark.acceptance
@patch("bregkit.config.load_dotenv", lambda: None)
class TestCheckEndToEnd(unittest.TestCase):
    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def validate(self, text: str) -> List[ReportRecord]:
        records = TypeAdapter(List[ReportRecord]).validate_python(json.loads(text))
        self.assertTrue(records)
        for record in records:
            self.assertEqual(record.passed, record.violations == 0, record.probe)
            if isinstance(record.worst_margin, str):
                self.assertIn(record.worst_margin, ("inf", "-inf", "nan"))
        names = [record.probe for record in records]
        self.assertEqual(names, sorted(names))
        return records

    def test_check_all_default_entropy(self):
        code, out, _ = self.run_cli("check", "--suite", "all", "--seed", "42", "--samples", SAMPLES)
        records = self.validate(out)
        self.assertEqual(code, EXIT_OK, [r.probe for r in records if not r.passed])
        self.assertTrue(all(record.seed == 42 for record in records))

    def test_check_all_catalog(self):
        code, out, _ = self.run_cli(
            "check", "--entropy", "all", "--suite", "all", "--seed", "42", "--samples", SAMPLES
        )
        records = self.validate(out)
        self.assertEqual(code, EXIT_OK, [r.probe for r in records if not r.passed])
        self.assertTrue(any(record.probe.startswith("witness/") for record in records))
        self.assertTrue(any(record.probe.startswith("limiting/") for record in records))

    def test_corrupted_mu_catalog(self):
        code, out, _ = self.run_cli(
            "check",
            "--entropy",
            "all",
            "--suite",
            "strong_convexity",
            "--seed",
            "42",
            "--samples",
            SAMPLES,
            "--mu-factor",
            "2",
        )
        records = self.validate(out)
        self.assertEqual(code, EXIT_VIOLATION)
        self.assertTrue(any(not record.passed for record in records))


@pytest.mark.acceptance
class TestAcceptanceScript(unittest.TestCase):
    def setUp(self):
        self.script = load_script()
        self.settings = SuiteSettings(seed=42, samples=int(SAMPLES))

    def test_run_all_passes(self):
        results = self.script.run_all(self.settings, with_modulus=False)
        self.assertNotIn("modulus", results)
        self.assertIn("witness", results)
        failed = [r.probe for reports in results.values() for r in reports if not r.passed]
        self.assertEqual(failed, [])

    def test_corrupted_mu_control_detected(self):
        control = self.script.corrupted_mu_control(self.settings)
        self.assertTrue(control)
        self.assertTrue(any(not report.passed for report in control))

    def test_modulus_lower_bound_over_catalog(self):
        settings = SuiteSettings(seed=42, samples=1_000, dims=(1,))
        reports = run_suite("modulus", acceptance_catalog((1,), 42), settings)
        bounds = [report for report in reports if report.probe.endswith("/lower_bound")]
        self.assertTrue(bounds)
        self.assertEqual([r.probe for r in bounds if not r.passed], [])


if __name__ == "__main__":
    unittest.main()
