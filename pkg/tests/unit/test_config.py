"""Unit tests for configuration loading."""

import tomllib
from pathlib import Path

import pytest

from fpdpm.config import (
    DEFAULT_CONFIG,
    FpdpmConfig,
    load_config,
    parse_config,
    render_config,
)
from fpdpm.errors import ConfigurationError
from fpdpm.simgen import Scenario
from fpdpm.wavelet import WaveletFamily


class TestDefaults:
    """Test the built-in configuration."""

    def test_default_text_matches_dataclasses(self) -> None:
        """Test that the commented default file parses to the dataclass defaults."""
        assert parse_config(tomllib.loads(DEFAULT_CONFIG)) == FpdpmConfig()

    def test_load_without_path(self) -> None:
        """Test that no path gives the defaults."""
        config = load_config()
        assert config.chain.method == "fpdpm"
        assert config.chain.n_iter == 2000
        assert config.model.family is WaveletFamily.HAAR
        assert config.simulation.scenario.dims == (32, 32)
        assert config.summary.gr_threshold == 1.2

    def test_empty_document(self) -> None:
        """Test that an empty document fills in every default."""
        assert parse_config({}) == FpdpmConfig()


class TestParse:
    """Test parsing of partial documents."""

    def test_partial_sections(self) -> None:
        """Test that given keys override and the rest keep defaults."""
        config = parse_config(
            {
                "model": {"alpha": 2.0, "family": "daubechies4", "mgp": {"a1": 3.0}},
                "chain": {"n_iter": 50, "chains": 3},
                "simulation": {"scenario": "local", "dims": [8, 8]},
                "benchmark": {"sizes": [4, 8]},
                "replicate": {"methods": ["dpm", "pca-km"], "k_values": []},
            }
        )
        assert config.model.hyper.alpha == (2.0,)
        assert config.model.hyper.mgp.a1 == 3.0
        assert config.model.hyper.mgp.a2 == 3.1
        assert config.model.family is WaveletFamily.DAUBECHIES4
        assert config.chain.n_iter == 50
        assert config.chain.chains == 3
        assert config.simulation.scenario.scenario is Scenario.LOCAL
        assert config.simulation.scenario.dims == (8, 8)
        assert config.benchmark.sizes == (4, 8)
        assert config.replicate.methods == ("dpm", "pca-km")
        assert config.replicate.k_values == ()
        assert config.replicate.replicates == 30

    def test_alpha_per_level(self) -> None:
        """Test that a list of concentrations is kept per level."""
        config = parse_config({"model": {"alpha": [1.0, 0.5, 0.25]}})
        assert config.model.hyper.alpha == (1.0, 0.5, 0.25)

    def test_chain_seeds_consecutive(self) -> None:
        """Test that chain c runs with seed + c."""
        config = parse_config({"chain": {"seed": 10}})
        assert [config.chain.chain_config(c).seed for c in range(3)] == [10, 11, 12]

    @pytest.mark.parametrize(
        ("document", "field"),
        [
            ({"bogus": {}}, "bogus"),
            ({"model": {"colour": 1}}, "model.colour"),
            ({"model": {"mgp": {"a3": 1.0}}}, "model.mgp.a3"),
            ({"chain": {"speed": 2}}, "chain.speed"),
            ({"summary": {"kk": 2}}, "summary.kk"),
            ({"replicate": {"runs": 3}}, "replicate.runs"),
        ],
    )
    def test_unknown_key(self, document: dict, field: str) -> None:
        """Test that unknown keys are rejected with their dotted name."""
        with pytest.raises(ConfigurationError) as exc_info:
            parse_config(document)
        assert exc_info.value.field == field

    @pytest.mark.parametrize(
        ("document", "field"),
        [
            ({"model": {"omega2": -1.0}}, "model.omega2"),
            ({"model": {"alpha": [1.0, 0.0]}}, "model.alpha"),
            ({"model": {"family": "coiflet"}}, "model.family"),
            ({"simulation": {"dims": [6, 6]}}, "simulation.dims"),
            ({"simulation": {"scenario": "weird"}}, "simulation.scenario"),
            ({"chain": {"chains": 0}}, "chain.chains"),
            ({"replicate": {"replicates": 0}}, "replicate.replicates"),
            ({"replicate": {"methods": []}}, "replicate.methods"),
            ({"replicate": {"k_values": [3, 0]}}, "replicate.k_values"),
        ],
    )
    def test_invalid_value(self, document: dict, field: str) -> None:
        """Test that invalid values name the offending key."""
        with pytest.raises(ConfigurationError) as exc_info:
            parse_config(document)
        assert exc_info.value.field == field

    def test_no_retained_sweeps(self) -> None:
        """Test that a burn-in swallowing every sweep is rejected."""
        with pytest.raises(ConfigurationError):
            parse_config({"chain": {"n_iter": 1, "burn_in_fraction": 0.9}})


class TestRender:
    """Test rendering configurations back to TOML."""

    def test_round_trip_defaults(self) -> None:
        """Test that rendered defaults parse back to the same config."""
        config = FpdpmConfig()
        assert parse_config(tomllib.loads(render_config(config))) == config

    def test_round_trip_changed(self) -> None:
        """Test that non-default values survive rendering."""
        config = parse_config(
            {
                "model": {"alpha": [1.0, 0.5], "k_max": 5, "pad": True},
                "chain": {"method": "dpm", "thinning": 2},
                "simulation": {"scenario": "spatial", "sigma_lambda": 0.2},
                "replicate": {"replicates": 4, "methods": ["fpdpm"], "k_values": [2]},
            }
        )
        assert parse_config(tomllib.loads(render_config(config))) == config


class TestLoadFile:
    """Test reading configuration files and env overrides."""

    def test_load_file(self, tmp_path: Path) -> None:
        """Test loading a file on disk."""
        path = tmp_path / "fpdpm.toml"
        path.write_text('[chain]\nmethod = "pca-km"\nseed = 4\n')
        config = load_config(path)
        assert config.chain.method == "pca-km"
        assert config.chain.seed == 4

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing file raises ConfigurationError."""
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(tmp_path / "absent.toml")
        assert exc_info.value.field == "config"

    def test_unparseable_file(self, tmp_path: Path) -> None:
        """Test that broken TOML raises ConfigurationError."""
        path = tmp_path / "broken.toml"
        path.write_text("[chain\nseed = ")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_env_overrides(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        """Test that FPDPM_SEED and FPDPM_THREADS override the file."""
        path = tmp_path / "fpdpm.toml"
        path.write_text("[chain]\nseed = 4\nthreads = 1\n")
        monkeypatch.setenv("FPDPM_SEED", "99")
        monkeypatch.setenv("FPDPM_THREADS", "3")
        config = load_config(path)
        assert config.chain.seed == 99
        assert config.chain.threads == 3

    def test_env_does_not_stick_to_defaults(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that env overrides apply per call, not to the cached defaults."""
        monkeypatch.setenv("FPDPM_SEED", "5")
        assert load_config().chain.seed == 5
        monkeypatch.delenv("FPDPM_SEED")
        assert load_config().chain.seed == 0

    def test_bad_env_value(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a non-integer env value raises ConfigurationError."""
        monkeypatch.setenv("FPDPM_THREADS", "many")
        with pytest.raises(ConfigurationError) as exc_info:
            load_config()
        assert exc_info.value.field == "env"
