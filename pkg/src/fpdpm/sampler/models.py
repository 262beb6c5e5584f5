"""Sampler configuration and prepared chain inputs."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from ..model import CovarianceAtom, FunctionalDataset
from ..wavelet import Grid, WaveletFamily, analyze


@dataclass(frozen=True)
class ChainConfig:
    """Run-length and recording controls for one chain.

    Args:
        n_iter: Total sweeps
        burn_in_fraction: Leading fraction of sweeps discarded
        seed: Seed of the chain's random generator
        thinning: Keep every thinning-th post-burn-in sweep
        record_memberships: Store per-block memberships
        record_means: Store the mean function of every unit
        record_factor_counts: Store each unit's factor count
        record_timings: Store per-sweep wall time
        log_every: Sweeps between DEBUG progress lines (0 disables)
    """

    n_iter: int = 2000
    burn_in_fraction: float = 0.9
    seed: int = 0
    thinning: int = 1
    record_memberships: bool = True
    record_means: bool = True
    record_factor_counts: bool = True
    record_timings: bool = True
    log_every: int = 100

    def __post_init__(self) -> None:
        """Validate run-length settings."""
        if self.n_iter < 1:
            raise ConfigurationError(f"n_iter must be >= 1, got {self.n_iter}", field="n_iter")
        if not 0.0 <= self.burn_in_fraction < 1.0:
            raise ConfigurationError(
                f"burn_in_fraction must be in [0, 1), got {self.burn_in_fraction}",
                field="burn_in_fraction",
            )
        if self.thinning < 1:
            raise ConfigurationError(f"thinning must be >= 1, got {self.thinning}", field="thinning")
        if self.n_kept < 1:
            raise ConfigurationError(
                f"n_iter={self.n_iter} with burn_in_fraction={self.burn_in_fraction} keeps no sweeps",
                field="n_iter",
            )

    @property
    def n_kept(self) -> int:
        """Post-burn-in sweeps, floor(n_iter * (1 - burn_in_fraction))."""
        return int(np.floor(self.n_iter * (1.0 - self.burn_in_fraction) + 1e-9))

    @property
    def first_kept(self) -> int:
        return self.n_iter - self.n_kept

    def is_retained(self, iteration: int) -> bool:
        """Whether the 0-based sweep is stored in the trace."""
        offset = iteration - self.first_kept
        return offset >= 0 and offset % self.thinning == 0

    @property
    def n_retained(self) -> int:
        return -(-self.n_kept // self.thinning)


@dataclass
class SweepData:
    """Observations in both the data and the coefficient domain.

    Args:
        flat: (n, L) row-major pixels
        coefficients: (n, L) wavelet coefficients in [scaling, level 0, ...] order
        grid: Dyadic grid
        family: Wavelet family
    """

    flat: np.ndarray
    coefficients: np.ndarray
    grid: Grid
    family: WaveletFamily

    @classmethod
    def from_dataset(
        cls, data: FunctionalDataset, family: WaveletFamily = WaveletFamily.HAAR
    ) -> "SweepData":
        return cls(
            flat=data.flat(),
            coefficients=analyze(data.images, data.grid, family),
            grid=data.grid,
            family=family,
        )

    @property
    def n(self) -> int:
        return int(self.flat.shape[0])

    def rotate(self, atom: CovarianceAtom) -> np.ndarray:
        """Loadings expressed in the coefficient domain (L x K)."""
        if atom.K == 0:
            return atom.Lambda
        columns = atom.Lambda.T.reshape((atom.K, *self.grid.dims))
        return analyze(columns, self.grid, self.family).T
