"""Posterior summary data models with validation."""

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..model import Trace


@dataclass
class MembershipTensor:
    """Retained memberships, R samples x n units x (J+1) resolutions, 1-based."""

    labels: np.ndarray

    def __post_init__(self) -> None:
        """Validate tensor shape and label range."""
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 3:
            raise ParameterError(
                f"Membership tensor must be R x n x levels, got shape {self.labels.shape}"
            )
        if self.labels.shape[0] < 1:
            raise ParameterError("Membership tensor needs at least one retained sample")
        if self.labels.size and self.labels.min() < 1:
            raise ParameterError("Membership labels must be >= 1")

    @classmethod
    def from_trace(cls, trace: Trace) -> "MembershipTensor":
        return cls(trace.memberships)

    @classmethod
    def concatenate(cls, traces: list[Trace]) -> "MembershipTensor":
        """Pool retained samples of several chains over the same units.

        Raises:
            ParameterError: If the traces disagree on units or levels
        """
        shapes = {t.memberships.shape[1:] for t in traces}
        if len(shapes) != 1:
            raise ParameterError(f"Traces do not share a shape: {sorted(shapes)}")
        return cls(np.concatenate([t.memberships for t in traces], axis=0))

    @property
    def n_samples(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_units(self) -> int:
        return int(self.labels.shape[1])

    @property
    def n_levels(self) -> int:
        return int(self.labels.shape[2])


@dataclass
class DistanceMatrix:
    """Symmetric n x n matrix of pairwise distances in [0, 1] with zero diagonal."""

    values: np.ndarray

    def __post_init__(self) -> None:
        """Validate symmetry, range and diagonal."""
        self.values = np.asarray(self.values, dtype=float)
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ParameterError(f"Distance matrix must be square, got {v.shape}")
        if not np.allclose(v, v.T, atol=1e-12):
            raise ParameterError("Distance matrix is not symmetric")
        if np.any(np.diag(v) != 0):
            raise ParameterError("Distance matrix must have a zero diagonal")
        if v.size and (v.min() < 0 or v.max() > 1):
            raise ParameterError("Distances must lie in [0, 1]")

    @property
    def n(self) -> int:
        return int(self.values.shape[0])
