"""Baseline result data model."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError


@dataclass
class BaselineResult:
    """Global clustering produced by a comparison method.

    Args:
        memberships: 1-based cluster label per unit
        n_clusters: Number of distinct clusters
        seconds: Total wall time of the fit
        method: Method tag
        sweep_seconds: Per-sweep wall times for sampler-based methods
        n_components: Retained principal components (PCA-KM only)
        silhouettes: Mean silhouette width per candidate k (PCA-KM only)
        n_membership_parameters: Membership indicators per unit
    """

    memberships: np.ndarray
    n_clusters: int
    seconds: float
    method: str
    sweep_seconds: np.ndarray = field(default_factory=lambda: np.zeros(0))
    n_components: int | None = None
    silhouettes: dict[int, float] = field(default_factory=dict)
    n_membership_parameters: int = 1

    def __post_init__(self) -> None:
        """Validate label range and timings."""
        self.memberships = np.asarray(self.memberships, dtype=np.int64)
        if self.memberships.size and (
            self.memberships.min() < 1 or self.memberships.max() > self.n_clusters
        ):
            raise ParameterError(
                f"Memberships must lie in [1, {self.n_clusters}], got "
                f"[{self.memberships.min()}, {self.memberships.max()}]"
            )
        if self.seconds < 0 or np.any(np.asarray(self.sweep_seconds) < 0):
            raise ParameterError("Times must be non-negative")

    @property
    def mean_sweep_seconds(self) -> float:
        return float(np.mean(self.sweep_seconds)) if len(self.sweep_seconds) else self.seconds
