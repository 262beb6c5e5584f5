"""Method comparisons on the three simulation scenarios at desk scale.

Each test runs several 16x16 datasets of 100 units through long chains and
is marked slow. Fits fan out over up to four worker processes.
"""

import os
from pathlib import Path
from typing import Any

import pytest

from fpdpm.config import FpdpmConfig, parse_config
from fpdpm.core import cmd_benchmark, cmd_diagnose, cmd_fit, cmd_replicate, cmd_simulate

pytestmark = pytest.mark.slow

WORKERS = min(4, os.cpu_count() or 1)


def desk_config(scenario: str, methods: list[str], seed: int, **chain: Any) -> FpdpmConfig:
    """Five independent-error replicates of a 16x16 scenario with 100 units."""
    return parse_config(
        {
            "chain": {
                "n_iter": 1000,
                "burn_in_fraction": 0.5,
                "log_every": 0,
                "threads": WORKERS,
                **chain,
            },
            "simulation": {
                "scenario": scenario,
                "n": 100,
                "dims": [16, 16],
                "error_model": "independent",
                "seed": seed,
            },
            "replicate": {"replicates": 5, "methods": methods, "k_values": []},
        }
    )


def table_by_method(config: FpdpmConfig, out_dir: Path) -> dict[str, dict[str, Any]]:
    result = cmd_replicate(config, out_dir)
    return {entry["method"]: entry for entry in result.report["table"]}


def test_global_scenario_independent_beats_dpm(tmp_path: Path) -> None:
    """Test that fpdpm-independent finds the eight coarse patterns and DPM does worse."""
    table = table_by_method(
        desk_config("global", ["fpdpm-independent", "dpm"], seed=100), tmp_path / "rep"
    )

    assert table["fpdpm-independent"]["ari_mean"] >= 0.85
    assert table["dpm"]["ari_mean"] < table["fpdpm-independent"]["ari_mean"]


def test_local_scenario_level_clusters(tmp_path: Path) -> None:
    """Test that fpdpm recovers level-1 clusters that a global DPM cannot see."""
    table = table_by_method(desk_config("local", ["fpdpm", "dpm"], seed=200), tmp_path / "rep")

    fpdpm_levels = table["fpdpm"]["ari_per_level_mean"]
    dpm_levels = table["dpm"]["ari_per_level_mean"]
    assert fpdpm_levels[1] >= 0.9
    assert dpm_levels[1] <= 0.3
    assert dpm_levels[2] <= 0.3
    assert fpdpm_levels[1] > dpm_levels[1]


def test_spatial_scenario_independent_beats_dpm(tmp_path: Path) -> None:
    """Test that fpdpm-independent separates the sixteen circle patterns better than DPM."""
    table = table_by_method(
        desk_config("spatial", ["fpdpm-independent", "dpm"], seed=300), tmp_path / "rep"
    )

    assert table["fpdpm-independent"]["ari_mean"] >= 0.9
    assert table["dpm"]["ari_mean"] < table["fpdpm-independent"]["ari_mean"]


def test_two_chains_mostly_converge(tmp_path: Path) -> None:
    """Test that most posterior mean entries of two chains pass Gelman-Rubin 1.2."""
    config = desk_config("global", ["fpdpm"], seed=400, chains=2)
    cmd_simulate(config, tmp_path / "sim")
    cmd_fit(config, tmp_path / "sim" / "observed.csv", tmp_path / "fit")

    traces = [tmp_path / "fit" / "trace_1.npz", tmp_path / "fit" / "trace_2.npz"]
    report = cmd_diagnose(config, traces, tmp_path / "diag", threshold=1.2).report

    assert report["fraction_converged"] >= 0.8


def test_per_coefficient_sweeps_grow_faster(tmp_path: Path) -> None:
    """Test that the per-coefficient sweep time grows at least half a power of L faster."""
    config = parse_config({"benchmark": {"sizes": [4, 8, 16], "iters": 10, "n": 30}})
    slopes = cmd_benchmark(config, tmp_path / "bench").report["slopes"]

    assert slopes["lpp-timing"] >= slopes["fpdpm"] + 0.5
