"""Wavelet data models with validation."""

from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

import numpy as np

from ..errors import DimensionError, StructureError


class WaveletFamily(StrEnum):
    """Orthonormal wavelet families supported on dyadic grids.

    Values are the family tags used in configuration files. ``pywt_name``
    maps them onto PyWavelets filter banks; the 4-tap Daubechies filter is
    ``db2`` in PyWavelets naming.
    """

    HAAR = "haar"
    DAUBECHIES4 = "daubechies4"

    @property
    def pywt_name(self) -> str:
        return {"haar": "haar", "daubechies4": "db2"}[self.value]


def is_power_of_two(value: int) -> bool:
    """Return True if value is a positive power of two."""
    return value > 0 and (value & (value - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Dyadic observation grid shared by all units.

    Args:
        dims: Per-axis point counts, each a power of two >= 2. Two-dimensional
            grids must be square so that a full decomposition reaches a single
            scaling coefficient.
    """

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate grid dimensions."""
        dims = tuple(int(v) for v in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) not in (1, 2):
            raise DimensionError(f"Only 1-D and 2-D grids are supported, got {dims}")
        for v in dims:
            if v < 2 or not is_power_of_two(v):
                raise DimensionError(f"Grid dims must be powers of two >= 2, got {dims}")
        if len(dims) == 2 and dims[0] != dims[1]:
            raise DimensionError(f"2-D grids must be square, got {dims}")
        if self.L < 4 and len(dims) == 1:
            raise DimensionError(f"Grid must hold at least 4 points, got {dims}")

    @property
    def d(self) -> int:
        """Spatial dimension."""
        return len(self.dims)

    @property
    def L(self) -> int:  # noqa: N802
        """Total number of grid points."""
        return int(np.prod(self.dims))

    @property
    def J(self) -> int:  # noqa: N802
        """Finest resolution index; levels run 0..J."""
        return int(np.log2(self.dims[0])) - 1

    @property
    def n_levels(self) -> int:
        return self.J + 1

    def level_size(self, j: int) -> int:
        """Number of detail coefficients m_j at resolution level j."""
        if not 0 <= j <= self.J:
            raise DimensionError(f"Level {j} outside 0..{self.J}")
        if self.d == 1:
            return 2**j
        return 3 * 4**j

    @cached_property
    def level_sizes(self) -> tuple[int, ...]:
        return tuple(self.level_size(j) for j in range(self.n_levels))

    @cached_property
    def level_offsets(self) -> tuple[int, ...]:
        """Start of each level in the flat [scaling, level 0, ..., level J] order."""
        starts = 1 + np.concatenate([[0], np.cumsum(self.level_sizes)[:-1]])
        return tuple(int(s) for s in starts)

    def level_slice(self, j: int) -> slice:
        start = self.level_offsets[j]
        return slice(start, start + self.level_size(j))

    def level_indices(self, j: int) -> np.ndarray:
        """Flat coefficient positions belonging to level j."""
        s = self.level_slice(j)
        return np.arange(s.start, s.stop)

    @classmethod
    def enclosing(cls, shape: tuple[int, ...]) -> "Grid":
        """Smallest dyadic grid covering an image of the given shape."""
        if len(shape) == 2:
            side = max(shape)
            side = max(2, 1 << (int(side) - 1).bit_length())
            return cls((side, side))
        length = max(4, 1 << (int(shape[0]) - 1).bit_length())
        return cls((length,))


@dataclass(frozen=True)
class PaddingRecord:
    """Where an original image sits inside its zero-padded dyadic embedding.

    Args:
        original_dims: Per-axis size before padding
        offsets: Per-axis count of zeros prepended
        padded_dims: Per-axis size after padding
    """

    original_dims: tuple[int, ...]
    offsets: tuple[int, ...]
    padded_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate that the original window fits inside the padded image."""
        if not (len(self.original_dims) == len(self.offsets) == len(self.padded_dims)):
            raise DimensionError("PaddingRecord fields must have equal lengths")
        for o, off, p in zip(
            self.original_dims, self.offsets, self.padded_dims, strict=True
        ):
            if off < 0 or o + off > p:
                raise DimensionError(
                    f"Original dims {self.original_dims} with offsets {self.offsets} "
                    f"do not fit in {self.padded_dims}"
                )

    @property
    def trailing(self) -> tuple[int, ...]:
        """Per-axis count of zeros appended."""
        return tuple(
            p - o - off
            for o, off, p in zip(
                self.original_dims, self.offsets, self.padded_dims, strict=True
            )
        )

    def window(self) -> tuple[slice, ...]:
        return tuple(
            slice(off, off + o)
            for o, off in zip(self.original_dims, self.offsets, strict=True)
        )


@dataclass
class WaveletCoefficients:
    """Coefficients of a full orthonormal decomposition grouped by level.

    Leading axes are batch axes: ``scaling`` has shape ``batch`` and
    ``levels[j]`` has shape ``batch + (m_j,)``. Within a 2-D level the order
    is subband-major (horizontal, vertical, diagonal detail) and row-major
    inside each subband.

    Args:
        scaling: Scaling coefficient(s)
        levels: Detail coefficients, coarse to fine
        family: Wavelet family used
        grid: Grid the coefficients describe
    """

    scaling: np.ndarray
    levels: list[np.ndarray]
    family: WaveletFamily
    grid: Grid = field(repr=False)

    def __post_init__(self) -> None:
        """Validate level sizes against the grid."""
        self.scaling = np.asarray(self.scaling, dtype=float)
        if len(self.levels) != self.grid.n_levels:
            raise StructureError(
                f"Expected {self.grid.n_levels} levels, got {len(self.levels)}"
            )
        for j, level in enumerate(self.levels):
            if level.shape[-1] != self.grid.level_size(j):
                raise StructureError(
                    f"Level {j} has {level.shape[-1]} coefficients, "
                    f"expected {self.grid.level_size(j)}"
                )
            if level.shape[:-1] != self.scaling.shape:
                raise StructureError(
                    f"Level {j} batch shape {level.shape[:-1]} does not match "
                    f"scaling batch shape {self.scaling.shape}"
                )

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return tuple(self.scaling.shape)
