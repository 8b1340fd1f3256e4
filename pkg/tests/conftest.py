"""Pytest configuration: package root on sys.path and a clean seed environment."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch):
    """Tests that need BREGKIT_SEED set it themselves."""
    monkeypatch.delenv("BREGKIT_SEED", raising=False)


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance: full-size probe runs over the acceptance catalog (deselect with -m 'not acceptance')",
    )
