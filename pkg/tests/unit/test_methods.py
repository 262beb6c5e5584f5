"""Unit tests for the fit-method registry."""

import numpy as np
import pytest

from fpdpm.methods import FitMethod, FitOutcome, MethodRegistry
from fpdpm.model import FunctionalDataset, Hyperparameters
from fpdpm.sampler import ChainConfig


class TestMethodRegistry:
    """Test lookup of clustering methods by name."""

    def test_all_methods_registered(self) -> None:
        """Test that the five methods are available."""
        assert set(MethodRegistry.names()) == {
            "fpdpm",
            "fpdpm-independent",
            "dpm",
            "pca-km",
            "lpp-timing",
        }

    @pytest.mark.parametrize("name", ["fpdpm", "fpdpm-independent", "dpm", "pca-km", "lpp-timing"])
    def test_create_by_name(self, name: str) -> None:
        """Test that create returns an instance carrying its name."""
        method = MethodRegistry.create(name)
        assert isinstance(method, FitMethod)
        assert method.name == name

    def test_unknown_method(self) -> None:
        """Test that an unknown name lists the available methods."""
        with pytest.raises(KeyError) as exc_info:
            MethodRegistry.get("kmeans")
        assert "Method 'kmeans' not found" in str(exc_info.value)
        assert "fpdpm" in str(exc_info.value)

    def test_only_pca_km_skips_sampling(self) -> None:
        """Test which methods run as chains."""
        samplers = {name for name in MethodRegistry.names() if MethodRegistry.get(name).sampler_based}
        assert samplers == {"fpdpm", "fpdpm-independent", "dpm", "lpp-timing"}

    def test_level_specific_methods(self) -> None:
        """Test that only the fPDPM variants keep one membership per level."""
        levelled = {name for name in MethodRegistry.names() if MethodRegistry.get(name).level_specific}
        assert levelled == {"fpdpm", "fpdpm-independent"}


class TestFitOutcome:
    """Test what each method returns."""

    def test_pca_km_has_no_trace(self, rng: np.random.Generator) -> None:
        """Test that PCA-KM returns a point clustering only."""
        images = np.concatenate([np.zeros((5, 4, 4)), np.full((5, 4, 4), 3.0)])
        images[5:, :2] = -3.0
        images += 0.05 * rng.standard_normal(images.shape)
        outcome = MethodRegistry.create("pca-km").fit(
            FunctionalDataset.from_matrix(images), Hyperparameters(), ChainConfig(n_iter=10, seed=1)
        )
        assert isinstance(outcome, FitOutcome)
        assert outcome.trace is None
        assert outcome.baseline is not None
        assert outcome.baseline.n_clusters == 2

    def test_independent_variant_has_no_factors(self, rng: np.random.Generator) -> None:
        """Test that the independent-error variant never carries loadings."""
        data = FunctionalDataset.from_matrix(rng.standard_normal((6, 4, 4)))
        config = ChainConfig(n_iter=6, burn_in_fraction=0.5, seed=2, log_every=0)
        outcome = MethodRegistry.create("fpdpm-independent").fit(data, Hyperparameters(), config)
        assert outcome.trace is not None
        assert outcome.trace.method == "fpdpm-independent"
        assert np.all(outcome.trace.factor_counts == 0)
