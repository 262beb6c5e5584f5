"""Unit tests for the comparison methods."""

import numpy as np
import pytest

from fpdpm.baselines import (
    BaselineResult,
    fit_global_dpm,
    fit_lpp_timing_surrogate,
    fit_pca_kmeans,
)
from fpdpm.errors import DegenerateInputError, ParameterError
from fpdpm.model import FunctionalDataset, Hyperparameters
from fpdpm.postproc import adjusted_rand_index
from fpdpm.sampler import ChainConfig


def grouped_images(rng: np.random.Generator, per_group: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Three groups of 4x4 images, each lit up in a different quadrant."""
    patterns = np.zeros((3, 4, 4))
    patterns[0, :2, :2] = 5.0
    patterns[1, 2:, 2:] = 5.0
    patterns[2, :2, 2:] = 5.0
    groups = np.repeat(np.arange(3), per_group)
    images = patterns[groups] + 0.1 * rng.standard_normal((groups.size, 4, 4))
    return images, groups + 1


SHORT_CHAIN = ChainConfig(n_iter=20, burn_in_fraction=0.5, seed=3, log_every=0)


class TestBaselineResult:
    """Test BaselineResult validation."""

    def test_labels_within_count(self) -> None:
        """Test that labels above n_clusters are rejected."""
        with pytest.raises(ParameterError):
            BaselineResult(memberships=np.array([1, 3]), n_clusters=2, seconds=0.1, method="x")

    def test_negative_time(self) -> None:
        """Test that negative timings are rejected."""
        with pytest.raises(ParameterError):
            BaselineResult(memberships=np.array([1, 1]), n_clusters=1, seconds=-1.0, method="x")

    def test_mean_sweep_falls_back_to_total(self) -> None:
        """Test that a result without sweeps reports its total time."""
        result = BaselineResult(memberships=np.array([1, 2]), n_clusters=2, seconds=0.5, method="x")
        assert result.mean_sweep_seconds == 0.5


class TestPcaKmeans:
    """Test PCA followed by k-means."""

    def test_recovers_separated_groups(self, rng: np.random.Generator) -> None:
        """Test that three well-separated groups are found exactly."""
        images, truth = grouped_images(rng)
        result = fit_pca_kmeans(FunctionalDataset.from_matrix(images), seed=0)
        assert result.n_clusters == 3
        assert adjusted_rand_index(result.memberships, truth) == pytest.approx(1.0)
        assert result.method == "pca-km"
        assert result.n_components is not None and result.n_components >= 1
        assert set(result.silhouettes) == set(range(2, 11))

    def test_labels_canonical(self, rng: np.random.Generator) -> None:
        """Test that labels are 1-based by first appearance."""
        images, _ = grouped_images(rng)
        result = fit_pca_kmeans(FunctionalDataset.from_matrix(images), seed=0)
        assert result.memberships[0] == 1
        assert result.memberships.min() == 1

    def test_custom_k_range(self, rng: np.random.Generator) -> None:
        """Test that only the requested candidates are tried."""
        images, _ = grouped_images(rng)
        result = fit_pca_kmeans(FunctionalDataset.from_matrix(images), k_range=range(2, 4))
        assert set(result.silhouettes) == {2, 3}

    def test_too_few_units(self, rng: np.random.Generator) -> None:
        """Test that fewer than three units raise ParameterError."""
        data = FunctionalDataset.from_matrix(rng.standard_normal((2, 4, 4)))
        with pytest.raises(ParameterError):
            fit_pca_kmeans(data)

    def test_k_range_outside_units(self, rng: np.random.Generator) -> None:
        """Test that candidates of n or more clusters raise ParameterError."""
        data = FunctionalDataset.from_matrix(rng.standard_normal((5, 4, 4)))
        with pytest.raises(ParameterError):
            fit_pca_kmeans(data, k_range=range(2, 6))

    def test_zero_variance(self) -> None:
        """Test that identical units raise DegenerateInputError."""
        data = FunctionalDataset.from_matrix(np.ones((6, 4, 4)))
        with pytest.raises(DegenerateInputError):
            fit_pca_kmeans(data)


class TestSamplerBaselines:
    """Test the global DPM and the per-coefficient surrogate on short chains."""

    def test_global_dpm_ties_levels(self, rng: np.random.Generator) -> None:
        """Test that every resolution level carries the same membership."""
        images, _ = grouped_images(rng, per_group=4)
        result, trace = fit_global_dpm(
            FunctionalDataset.from_matrix(images), Hyperparameters(), SHORT_CHAIN
        )
        for j in range(1, trace.memberships.shape[2]):
            np.testing.assert_array_equal(trace.memberships[:, :, j], trace.memberships[:, :, 0])
        assert result.n_membership_parameters == 1
        assert result.memberships.shape == (12,)
        assert trace.method == "dpm"
        assert trace.sweep_seconds.shape == (SHORT_CHAIN.n_iter,)

    def test_lpp_surrogate_membership_count(self, rng: np.random.Generator) -> None:
        """Test that the surrogate carries one membership chain per coefficient."""
        images, _ = grouped_images(rng, per_group=2)
        result, trace = fit_lpp_timing_surrogate(
            FunctionalDataset.from_matrix(images), Hyperparameters(), SHORT_CHAIN
        )
        assert result.n_membership_parameters == 16
        assert trace.block_memberships.shape == (SHORT_CHAIN.n_retained, 6, 16)
        assert result.mean_sweep_seconds > 0
