"""Simulation scenario data models."""

from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from ..errors import ConfigurationError
from ..model import CovarianceAtom
from ..wavelet import Grid


class Scenario(StrEnum):
    GLOBAL = "global"
    LOCAL = "local"
    SPATIAL = "spatial"


class ErrorModel(StrEnum):
    """Error structures: diagonal, or spike-and-slab loadings of rank 1 or 10."""

    INDEPENDENT = "independent"
    LOWRANK = "lowrank"
    HIGHRANK = "highrank"

    @property
    def rank(self) -> int:
        return {"independent": 0, "lowrank": 1, "highrank": 10}[self.value]


# (mean, probability of a zero multiplier) for local-scenario levels 0, 1, 2
LOCAL_LEVEL_PARAMS: tuple[tuple[float, float], ...] = ((2.0, 1 / 3), (0.5, 0.15), (0.15, 0.5))

CIRCLE_CENTERS: tuple[tuple[float, float], ...] = (
    (0.25, 0.25),
    (0.75, 0.25),
    (0.25, 0.75),
    (0.75, 0.75),
)

ERROR_VARIANCES: tuple[float, ...] = (0.001, 0.005, 0.01)


@dataclass(frozen=True)
class ScenarioConfig:
    """Settings of one simulated dataset.

    Args:
        scenario: Which data-generating mechanism to use
        n: Number of units
        dims: Dyadic grid shape
        error_model: Error covariance structure
        seed: Generator seed
        n_global_clusters: Level-0 patterns in the global scenario
        n_local_clusters: Clusters per level in the local scenario
        sigma_lambda: Slab standard deviation of correlated loadings
            (defaults to 0.15 for the spatial scenario and 0.5 otherwise)
        circle_radius2: Squared radius of the spatial-scenario circles
        amplitude: Absolute value inside a spatial-scenario circle
    """

    scenario: Scenario = Scenario.GLOBAL
    n: int = 300
    dims: tuple[int, ...] = (32, 32)
    error_model: ErrorModel = ErrorModel.INDEPENDENT
    seed: int = 0
    n_global_clusters: int = 8
    n_local_clusters: int = 27
    sigma_lambda: float | None = None
    circle_radius2: float = 0.025
    amplitude: float = 0.5

    def __post_init__(self) -> None:
        """Validate scenario settings."""
        try:
            object.__setattr__(self, "scenario", Scenario(self.scenario))
        except ValueError as e:
            raise ConfigurationError(
                f"Unknown scenario {self.scenario!r}", field="scenario", original_error=e
            ) from e
        try:
            object.__setattr__(self, "error_model", ErrorModel(self.error_model))
        except ValueError as e:
            raise ConfigurationError(
                f"Unknown error model {self.error_model!r}", field="error_model", original_error=e
            ) from e
        if self.n < 2:
            raise ConfigurationError(f"n must be >= 2, got {self.n}", field="n")
        try:
            Grid(tuple(self.dims))
        except ValueError as e:
            raise ConfigurationError(str(e), field="dims", original_error=e) from e
        if self.sigma_lambda is not None and self.sigma_lambda <= 0:
            raise ConfigurationError("sigma_lambda must be positive", field="sigma_lambda")

    @property
    def grid(self) -> Grid:
        return Grid(tuple(self.dims))

    @property
    def slab_sd(self) -> float:
        if self.sigma_lambda is not None:
            return self.sigma_lambda
        return 0.15 if self.scenario is Scenario.SPATIAL else 0.5


@dataclass
class GeneratedDataset:
    """Simulated observations with their ground truth.

    Args:
        observed: (n, L) observations, row-major pixels
        truth: (n, L) true mean functions
        errors: (n, L) additive errors
        labels: (n, levels) 1-based true labels per resolution level
        covariance_labels: (n,) 1-based true error-cluster labels
        global_labels: (n,) 1-based true global clusters
        snr: Mean signal-to-noise ratio in dB
        grid: Observation grid
        covariance_atoms: The three true error covariances
    """

    observed: np.ndarray
    truth: np.ndarray
    errors: np.ndarray
    labels: np.ndarray
    covariance_labels: np.ndarray
    global_labels: np.ndarray
    snr: float
    grid: Grid
    covariance_atoms: list[CovarianceAtom] = field(default_factory=list)

    @property
    def n(self) -> int:
        return int(self.observed.shape[0])

    def images(self) -> np.ndarray:
        return self.observed.reshape((self.n, *self.grid.dims))
