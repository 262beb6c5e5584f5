"""Separable orthonormal discrete wavelet transforms on dyadic grids.

Full-depth decompositions are delegated to PyWavelets in periodization mode,
which keeps the Haar and 4-tap Daubechies transforms exactly orthonormal on
dyadic grids. All functions accept leading batch axes; the trailing
``grid.d`` axes hold the image.
"""

import logging
import warnings

import numpy as np
import pywt

from ..errors import DimensionError, StructureError
from .models import Grid, PaddingRecord, WaveletCoefficients, WaveletFamily, is_power_of_two

logger = logging.getLogger(__name__)

_MODE = "periodization"


def _resolve_grid(image: np.ndarray, grid: Grid | None) -> Grid:
    if grid is not None:
        trailing = image.shape[image.ndim - grid.d :]
        if tuple(trailing) != grid.dims:
            raise DimensionError(
                f"Image trailing shape {tuple(trailing)} does not match grid {grid.dims}"
            )
        return grid
    for v in image.shape:
        if not is_power_of_two(int(v)):
            raise DimensionError(
                f"Image shape {image.shape} is not dyadic; pad it with pad_to_dyadic"
            )
    return Grid(tuple(image.shape))


def pad_to_dyadic(
    image: np.ndarray, target_dims: tuple[int, ...]
) -> tuple[np.ndarray, PaddingRecord]:
    """Embed an image in a zero-filled dyadic array.

    The original sits at the start of every axis (zero offsets); zeros are
    appended after it. Leading axes beyond ``len(target_dims)`` are batch axes.

    Args:
        image: Real array whose trailing axes are the image
        target_dims: Powers of two, each >= the matching original size

    Returns:
        Tuple of (padded image, PaddingRecord)

    Raises:
        DimensionError: If a target is smaller than the original or not dyadic
    """
    image = np.asarray(image, dtype=float)
    target = tuple(int(v) for v in target_dims)
    d = len(target)
    if image.ndim < d:
        raise DimensionError(f"Image with shape {image.shape} has fewer than {d} axes")
    original = tuple(int(v) for v in image.shape[image.ndim - d :])
    for o, t in zip(original, target, strict=True):
        if not is_power_of_two(t):
            raise DimensionError(f"Target dims must be powers of two, got {target}")
        if t < o:
            raise DimensionError(f"Target dims {target} smaller than original {original}")

    widths = [(0, 0)] * (image.ndim - d) + [(0, t - o) for o, t in zip(original, target, strict=True)]
    padded = np.pad(image, widths, mode="constant", constant_values=0.0)
    record = PaddingRecord(original_dims=original, offsets=(0,) * d, padded_dims=target)
    return padded, record


def crop(padded: np.ndarray, record: PaddingRecord) -> np.ndarray:
    """Recover the original image from its padded embedding."""
    d = len(record.padded_dims)
    if tuple(padded.shape[padded.ndim - d :]) != record.padded_dims:
        raise DimensionError(
            f"Padded shape {padded.shape} does not match record {record.padded_dims}"
        )
    return padded[(Ellipsis, *record.window())]


def forward_dwt(
    image: np.ndarray,
    family: WaveletFamily | str = WaveletFamily.HAAR,
    grid: Grid | None = None,
) -> WaveletCoefficients:
    """Full-depth orthonormal wavelet decomposition grouped by level.

    Args:
        image: Dyadic image, optionally with leading batch axes
        family: Wavelet family (Haar by default)
        grid: Grid of the trailing axes; inferred from the shape when omitted

    Returns:
        WaveletCoefficients with levels ordered coarse to fine

    Raises:
        DimensionError: If the image is not on a dyadic grid
    """
    family = WaveletFamily(family)
    image = np.asarray(image, dtype=float)
    grid = _resolve_grid(image, grid)
    depth = grid.J + 1
    batch = image.shape[: image.ndim - grid.d]

    with warnings.catch_warnings():
        # Full depth exceeds pywt's boundary-free level for longer filters.
        warnings.simplefilter("ignore", UserWarning)
        if grid.d == 1:
            parts = pywt.wavedec(image, family.pywt_name, mode=_MODE, level=depth, axis=-1)
            scaling = parts[0][..., 0]
            levels = [np.array(p, dtype=float) for p in parts[1:]]
        else:
            parts2 = pywt.wavedec2(
                image, family.pywt_name, mode=_MODE, level=depth, axes=(-2, -1)
            )
            scaling = parts2[0][..., 0, 0]
            levels = [
                np.concatenate([band.reshape(*batch, -1) for band in detail], axis=-1)
                for detail in parts2[1:]
            ]

    return WaveletCoefficients(
        scaling=np.asarray(scaling, dtype=float).reshape(batch),
        levels=levels,
        family=family,
        grid=grid,
    )


def inverse_dwt(coeffs: WaveletCoefficients) -> np.ndarray:
    """Exact inverse of forward_dwt.

    Raises:
        StructureError: If level sizes are inconsistent with the grid
    """
    grid = coeffs.grid
    batch = coeffs.batch_shape
    for j, level in enumerate(coeffs.levels):
        if level.shape != (*batch, grid.level_size(j)):
            raise StructureError(
                f"Level {j} has shape {level.shape}, expected {(*batch, grid.level_size(j))}"
            )

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        if grid.d == 1:
            parts = [coeffs.scaling[..., None], *coeffs.levels]
            image = pywt.waverec(parts, coeffs.family.pywt_name, mode=_MODE, axis=-1)
        else:
            parts2: list = [coeffs.scaling[..., None, None]]
            for j, level in enumerate(coeffs.levels):
                side = 2**j
                bands = level.reshape(*batch, 3, side, side)
                parts2.append(tuple(bands[..., b, :, :] for b in range(3)))
            image = pywt.waverec2(parts2, coeffs.family.pywt_name, mode=_MODE, axes=(-2, -1))
    return np.asarray(image, dtype=float)


def coefficient_layout(grid: Grid) -> list[np.ndarray]:
    """Flat positions of [scaling, level 0, ..., level J] in a coefficient vector."""
    return [np.array([0]), *(grid.level_indices(j) for j in range(grid.n_levels))]


def to_vector(coeffs: WaveletCoefficients) -> np.ndarray:
    """Flatten to [scaling, level 0, ..., level J] along the last axis."""
    return np.concatenate([coeffs.scaling[..., None], *coeffs.levels], axis=-1)


def from_vector(
    vector: np.ndarray,
    grid: Grid,
    family: WaveletFamily | str = WaveletFamily.HAAR,
) -> WaveletCoefficients:
    """Inverse of to_vector.

    Raises:
        StructureError: If the last axis does not have length grid.L
    """
    vector = np.asarray(vector, dtype=float)
    if vector.shape[-1] != grid.L:
        raise StructureError(
            f"Coefficient vector has length {vector.shape[-1]}, expected {grid.L}"
        )
    levels = [np.array(vector[..., grid.level_slice(j)]) for j in range(grid.n_levels)]
    return WaveletCoefficients(
        scaling=np.array(vector[..., 0]),
        levels=levels,
        family=WaveletFamily(family),
        grid=grid,
    )


def analyze(
    images: np.ndarray,
    grid: Grid,
    family: WaveletFamily | str = WaveletFamily.HAAR,
) -> np.ndarray:
    """Flat coefficient vectors of a batch of images, shape ``batch + (L,)``."""
    return to_vector(forward_dwt(images, family, grid))


def synthesize(
    vectors: np.ndarray,
    grid: Grid,
    family: WaveletFamily | str = WaveletFamily.HAAR,
) -> np.ndarray:
    """Images from flat coefficient vectors, shape ``batch + grid.dims``."""
    return inverse_dwt(from_vector(vectors, grid, family))


def synthesize_level(
    j: int,
    beta: np.ndarray,
    grid: Grid,
    family: WaveletFamily | str = WaveletFamily.HAAR,
) -> np.ndarray:
    """Compute Psi_j beta: the image carried by level-j detail coefficients.

    Args:
        j: Resolution level
        beta: Level-j coefficients, optionally batched, last axis of size m_j
        grid: Target grid
        family: Wavelet family

    Raises:
        DimensionError: If beta has the wrong length for level j
    """
    beta = np.asarray(beta, dtype=float)
    m_j = grid.level_size(j)
    if beta.shape[-1] != m_j:
        raise DimensionError(f"Level {j} expects {m_j} coefficients, got {beta.shape[-1]}")
    vector = np.zeros((*beta.shape[:-1], grid.L))
    vector[..., grid.level_slice(j)] = beta
    return synthesize(vector, grid, family)
