"""Pytest configuration and fixtures for fpdpm tests."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test sees the same draws."""
    return np.random.default_rng(20240601)


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    """Empty output directory for a command run."""
    path = tmp_path / "run"
    path.mkdir()
    return path


@pytest.fixture(autouse=True)
def clear_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep FPDPM_* variables from the caller's shell out of the tests."""
    monkeypatch.delenv("FPDPM_THREADS", raising=False)
    monkeypatch.delenv("FPDPM_SEED", raising=False)
