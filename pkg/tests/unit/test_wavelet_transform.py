"""Unit tests for dyadic grids and orthonormal wavelet transforms."""

import numpy as np
import pytest

from fpdpm.errors import DimensionError, StructureError
from fpdpm.wavelet import (
    Grid,
    WaveletFamily,
    analyze,
    coefficient_layout,
    crop,
    forward_dwt,
    from_vector,
    inverse_dwt,
    pad_to_dyadic,
    synthesize,
    synthesize_level,
    to_vector,
)

FAMILIES = [WaveletFamily.HAAR, WaveletFamily.DAUBECHIES4]


class TestGrid:
    """Test Grid validation and level bookkeeping."""

    def test_square_grid_levels(self) -> None:
        """Test level sizes of an 8x8 grid."""
        grid = Grid((8, 8))
        assert grid.L == 64
        assert grid.J == 2
        assert grid.level_sizes == (3, 12, 48)
        assert grid.level_offsets == (1, 4, 16)

    def test_one_dimensional_levels(self) -> None:
        """Test level sizes of a length-16 signal."""
        grid = Grid((16,))
        assert grid.level_sizes == (1, 2, 4, 8)
        assert 1 + sum(grid.level_sizes) == grid.L

    @pytest.mark.parametrize("dims", [(8, 4), (6, 6), (3,), (2,), (4, 4, 4)])
    def test_rejects_unsupported_dims(self, dims: tuple[int, ...]) -> None:
        """Test that non-square, non-dyadic or too-small grids raise DimensionError."""
        with pytest.raises(DimensionError):
            Grid(dims)

    def test_enclosing_grid(self) -> None:
        """Test the smallest dyadic grid covering odd shapes."""
        assert Grid.enclosing((3, 5)).dims == (8, 8)
        assert Grid.enclosing((5,)).dims == (8,)

    def test_level_outside_range(self) -> None:
        """Test that asking for a missing level raises."""
        with pytest.raises(DimensionError):
            Grid((4, 4)).level_size(2)


class TestPadding:
    """Test zero padding and cropping."""

    def test_pad_three_by_three(self) -> None:
        """Test that 3x3 ones pad to 4x4 with zeros on the last row and column."""
        padded, record = pad_to_dyadic(np.ones((3, 3)), (4, 4))
        assert padded.shape == (4, 4)
        assert np.all(padded[:3, :3] == 1.0)
        assert np.all(padded[3, :] == 0.0)
        assert np.all(padded[:, 3] == 0.0)
        assert record.offsets == (0, 0)
        assert record.trailing == (1, 1)

    def test_crop_inverts_pad(self, rng: np.random.Generator) -> None:
        """Test that crop recovers a padded batch exactly."""
        images = rng.standard_normal((5, 6, 7))
        padded, record = pad_to_dyadic(images, (8, 8))
        np.testing.assert_array_equal(crop(padded, record), images)

    def test_target_too_small(self) -> None:
        """Test that shrinking raises DimensionError."""
        with pytest.raises(DimensionError):
            pad_to_dyadic(np.ones((5, 5)), (4, 4))

    def test_target_not_dyadic(self) -> None:
        """Test that a non-dyadic target raises DimensionError."""
        with pytest.raises(DimensionError):
            pad_to_dyadic(np.ones((5, 5)), (6, 6))


class TestForwardInverse:
    """Test decomposition, reconstruction and energy preservation."""

    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize("side", [2, 4, 16, 64])
    def test_round_trip_images(
        self, family: WaveletFamily, side: int, rng: np.random.Generator
    ) -> None:
        """Test inverse(forward(x)) == x on square images."""
        image = rng.standard_normal((side, side))
        rebuilt = inverse_dwt(forward_dwt(image, family))
        assert np.max(np.abs(rebuilt - image)) < 1e-10

    @pytest.mark.parametrize("family", FAMILIES)
    def test_round_trip_signal(self, family: WaveletFamily, rng: np.random.Generator) -> None:
        """Test inverse(forward(x)) == x on a 1-D signal."""
        signal = rng.standard_normal(32)
        rebuilt = inverse_dwt(forward_dwt(signal, family))
        assert np.max(np.abs(rebuilt - signal)) < 1e-10

    @pytest.mark.parametrize("family", FAMILIES)
    def test_parseval(self, family: WaveletFamily, rng: np.random.Generator) -> None:
        """Test that coefficient energy equals image energy."""
        image = rng.standard_normal((32, 32))
        vector = analyze(image, Grid((32, 32)), family)
        assert np.sum(vector**2) == pytest.approx(np.sum(image**2), rel=1e-12)

    def test_constant_image_has_no_detail(self) -> None:
        """Test that a constant 4x4 image carries only the scaling coefficient."""
        coeffs = forward_dwt(np.ones((4, 4)))
        assert coeffs.scaling == pytest.approx(4.0)
        for level in coeffs.levels:
            np.testing.assert_allclose(level, 0.0, atol=1e-12)

    def test_level_shapes(self) -> None:
        """Test that each level carries 3 * 4^j coefficients."""
        coeffs = forward_dwt(np.zeros((8, 8)))
        assert [level.shape[-1] for level in coeffs.levels] == [3, 12, 48]

    def test_batched_matches_single(self, rng: np.random.Generator) -> None:
        """Test that a batch transforms like its members one at a time."""
        grid = Grid((8, 8))
        images = rng.standard_normal((4, 8, 8))
        batched = analyze(images, grid, WaveletFamily.DAUBECHIES4)
        for i in range(4):
            np.testing.assert_allclose(
                batched[i], analyze(images[i], grid, WaveletFamily.DAUBECHIES4), atol=1e-12
            )

    def test_non_dyadic_input(self) -> None:
        """Test that a non-dyadic image raises DimensionError."""
        with pytest.raises(DimensionError):
            forward_dwt(np.ones((6, 6)))

    def test_grid_mismatch(self) -> None:
        """Test that an image not matching the given grid raises."""
        with pytest.raises(DimensionError):
            forward_dwt(np.ones((8, 8)), grid=Grid((4, 4)))


class TestVectorLayout:
    """Test the flat [scaling, level 0, ..., level J] ordering."""

    def test_layout_partitions_positions(self) -> None:
        """Test that the layout covers every position exactly once."""
        grid = Grid((8, 8))
        layout = coefficient_layout(grid)
        assert [part.size for part in layout] == [1, 3, 12, 48]
        np.testing.assert_array_equal(np.sort(np.concatenate(layout)), np.arange(64))

    def test_vector_round_trip(self, rng: np.random.Generator) -> None:
        """Test that from_vector inverts to_vector."""
        grid = Grid((16,))
        vector = rng.standard_normal((3, 16))
        np.testing.assert_array_equal(to_vector(from_vector(vector, grid)), vector)

    def test_wrong_length(self) -> None:
        """Test that a short coefficient vector raises StructureError."""
        with pytest.raises(StructureError):
            from_vector(np.zeros(10), Grid((4, 4)))

    def test_synthesize_inverts_analyze(self, rng: np.random.Generator) -> None:
        """Test that synthesize(analyze(x)) == x."""
        grid = Grid((16, 16))
        images = rng.standard_normal((2, 16, 16))
        np.testing.assert_allclose(synthesize(analyze(images, grid), grid), images, atol=1e-12)


class TestSynthesizeLevel:
    """Test single-level synthesis."""

    @pytest.mark.parametrize("family", FAMILIES)
    def test_basis_images_orthonormal(self, family: WaveletFamily) -> None:
        """Test that the images of unit level-1 coefficients are orthonormal."""
        grid = Grid((8, 8))
        basis = synthesize_level(1, np.eye(12), grid, family).reshape(12, -1)
        np.testing.assert_allclose(basis @ basis.T, np.eye(12), atol=1e-12)

    def test_linear_in_coefficients(self, rng: np.random.Generator) -> None:
        """Test that synthesis of a sum is the sum of syntheses."""
        grid = Grid((8, 8))
        a, b = rng.standard_normal((2, 3))
        left = synthesize_level(0, a + 2 * b, grid)
        right = synthesize_level(0, a, grid) + 2 * synthesize_level(0, b, grid)
        np.testing.assert_allclose(left, right, atol=1e-12)

    def test_wrong_length(self) -> None:
        """Test that a coefficient vector of the wrong size raises."""
        with pytest.raises(DimensionError):
            synthesize_level(1, np.zeros(3), Grid((8, 8)))
