"""fPDPM probability-model data types."""

from dataclasses import dataclass, field
from typing import Generic, Literal, TypeVar

import numpy as np

from ..errors import ConfigurationError, DimensionError, ParameterError, StateCorruptionError
from ..wavelet import Grid, PaddingRecord, WaveletFamily, crop, pad_to_dyadic

VARIANCE_FLOOR = 1e-12

PartitionKind = Literal["resolution", "tied", "coefficient"]


@dataclass(frozen=True)
class MGPPrior:
    """Multiplicative gamma process hyperparameters for factor loadings.

    Args:
        a1: Shape of the first increment delta_1 ~ Ga(a1, 1)
        a2: Shape of later increments delta_m ~ Ga(a2, 1)
        a_e: Shape of the cluster shrinkage e ~ Ga(a_e, b_e)
        b_e: Rate of the cluster shrinkage
    """

    a1: float = 2.1
    a2: float = 3.1
    a_e: float = 3.0
    b_e: float = 2.0

    def __post_init__(self) -> None:
        """Validate MGP hyperparameters."""
        if self.a1 <= 2.0:
            raise ConfigurationError(f"a1 must exceed 2, got {self.a1}", field="a1")
        if self.a2 <= 3.0:
            raise ConfigurationError(f"a2 must exceed 3, got {self.a2}", field="a2")
        if self.a_e <= 0 or self.b_e <= 0:
            raise ConfigurationError("a_e and b_e must be positive", field="a_e")


@dataclass(frozen=True)
class VariancePrior:
    """Gamma prior on the idiosyncratic precision sigma^-2 ~ Ga(a_s, b_s)."""

    a_s: float = 2.5
    b_s: float = 3.0

    def __post_init__(self) -> None:
        """Validate variance hyperparameters."""
        if self.a_s <= 0 or self.b_s <= 0:
            raise ConfigurationError("a_s and b_s must be positive", field="a_s")


@dataclass(frozen=True)
class AdaptSettings:
    """Controls for the adaptive factor-count procedure.

    Args:
        b0: Intercept of the adaptation probability exp(-b0 - b1 * r)
        b1: Decay rate of the adaptation probability
        q: Fraction of small loadings that marks a column as redundant
        delta_thresh: Absolute-value threshold for a loading to count as small
        enabled: Whether adaptation runs at all
    """

    b0: float = 0.1
    b1: float = 0.0005
    q: float = 1.0
    delta_thresh: float = 0.1
    enabled: bool = True

    def __post_init__(self) -> None:
        """Validate adaptation controls."""
        if self.b0 < 0 or self.b1 < 0:
            raise ConfigurationError("b0 and b1 must be non-negative", field="b0")
        if not 0.0 < self.q <= 1.0:
            raise ConfigurationError(f"q must be in (0, 1], got {self.q}", field="q")
        if self.delta_thresh <= 0:
            raise ConfigurationError("delta_thresh must be positive", field="delta_thresh")

    def probability(self, iteration: int) -> float:
        """Probability of adapting the factor count at the given sweep."""
        return float(np.exp(-self.b0 - self.b1 * iteration))


@dataclass(frozen=True)
class Hyperparameters:
    """Prior hyperparameters of the fPDPM model.

    Args:
        alpha: DP concentration per coefficient block; a single value is
            shared by every block
        alpha_sigma: DP concentration for the covariance family
        omega2: Rate of the exponential mixing distribution of tau^2
        mgp: Multiplicative gamma process settings
        inv_gamma: Prior on the idiosyncratic variances
        adapt: Adaptive factor-count controls
        k_init: Initial number of factors per covariance atom
        k_max: Hard cap on the factor count (defaults to L)
        independent_errors: Fix the loadings at zero (fPDPMi variant)
    """

    alpha: tuple[float, ...] = (1.0,)
    alpha_sigma: float = 1.0
    omega2: float = 1.0
    mgp: MGPPrior = field(default_factory=MGPPrior)
    inv_gamma: VariancePrior = field(default_factory=VariancePrior)
    adapt: AdaptSettings = field(default_factory=AdaptSettings)
    k_init: int = 3
    k_max: int | None = None
    independent_errors: bool = False

    def __post_init__(self) -> None:
        """Validate hyperparameters."""
        alpha = tuple(float(a) for a in np.atleast_1d(self.alpha))
        object.__setattr__(self, "alpha", alpha)
        if not alpha or any(a <= 0 for a in alpha):
            raise ConfigurationError(f"alpha must be positive, got {alpha}", field="alpha")
        if self.alpha_sigma <= 0:
            raise ConfigurationError("alpha_sigma must be positive", field="alpha_sigma")
        if self.omega2 <= 0:
            raise ConfigurationError("omega2 must be positive", field="omega2")
        if self.k_init < 1:
            raise ConfigurationError("k_init must be at least 1", field="k_init")
        if self.k_max is not None and self.k_max < 1:
            raise ConfigurationError("k_max must be at least 1", field="k_max")

    def alpha_for(self, block: int) -> float:
        """Concentration of a block; the last value repeats for finer blocks."""
        return self.alpha[min(block, len(self.alpha) - 1)]

    def factor_cap(self, L: int) -> int:  # noqa: N803
        return min(self.k_max or L, L)


@dataclass
class CoefficientAtom:
    """Shared coefficient vector of one cluster at one block.

    Args:
        level: Block index the atom belongs to
        value: Coefficients beta of size m_j
        tau2: Scale-mixture variances tau^2 of size m_j
    """

    level: int
    value: np.ndarray
    tau2: np.ndarray

    def __post_init__(self) -> None:
        """Validate atom dimensions and variances."""
        self.value = np.asarray(self.value, dtype=float)
        self.tau2 = np.maximum(np.asarray(self.tau2, dtype=float), VARIANCE_FLOOR)
        if self.value.shape != self.tau2.shape or self.value.ndim != 1:
            raise DimensionError(
                f"value {self.value.shape} and tau2 {self.tau2.shape} must be equal-length vectors"
            )

    @property
    def size(self) -> int:
        return int(self.value.shape[0])


@dataclass
class CovarianceAtom:
    """One covariance cluster Sigma = Lambda Lambda^T + sigma2 I.

    Args:
        Lambda: L x K loading matrix (K may be 0 for independent errors)
        sigma2: Idiosyncratic variance
        phi: L x K local shrinkage precisions
        delta: Length-K multiplicative increments
        e: Cluster-level shrinkage
    """

    Lambda: np.ndarray  # noqa: N815
    sigma2: float
    phi: np.ndarray
    delta: np.ndarray
    e: float = 1.0

    def __post_init__(self) -> None:
        """Validate shapes and positivity."""
        self.Lambda = np.asarray(self.Lambda, dtype=float)
        self.phi = np.asarray(self.phi, dtype=float)
        self.delta = np.asarray(self.delta, dtype=float)
        self.sigma2 = max(float(self.sigma2), VARIANCE_FLOOR)
        if self.Lambda.ndim != 2 or self.phi.shape != self.Lambda.shape:
            raise DimensionError(
                f"Lambda {self.Lambda.shape} and phi {self.phi.shape} must be equal L x K"
            )
        if self.delta.shape != (self.Lambda.shape[1],):
            raise DimensionError(
                f"delta has shape {self.delta.shape}, expected ({self.Lambda.shape[1]},)"
            )

    @property
    def K(self) -> int:  # noqa: N802
        return int(self.Lambda.shape[1])

    @property
    def L(self) -> int:  # noqa: N802
        return int(self.Lambda.shape[0])

    @property
    def xi(self) -> np.ndarray:
        """Column-wise global shrinkage xi_r = prod_{m <= r} delta_m."""
        return np.cumprod(self.delta)

    def prior_precision(self) -> np.ndarray:
        """L x K prior precisions phi_lr * xi_r * e of the loadings."""
        return self.phi * self.xi[None, :] * self.e

    def covariance(self) -> np.ndarray:
        """Dense L x L covariance matrix."""
        return self.Lambda @ self.Lambda.T + self.sigma2 * np.eye(self.L)


AtomT = TypeVar("AtomT", CoefficientAtom, CovarianceAtom)


def stick_weights(nu: np.ndarray) -> np.ndarray:
    """Stick-breaking weights w_h = nu_h * prod_{e < h} (1 - nu_e)."""
    nu = np.asarray(nu, dtype=float)
    remaining = np.concatenate([[1.0], np.cumprod(1.0 - nu)[:-1]])
    return nu * remaining


@dataclass
class StickBreakingMixture(Generic[AtomT]):
    """Instantiated part of one Dirichlet process in slice-sampler form.

    Args:
        alpha: Concentration parameter
        nu: Stick fractions, one per instantiated atom
        atoms: Atom parameters, aligned with nu
        labels: 0-based atom index per unit
        slices: Slice variable per unit
    """

    alpha: float
    nu: np.ndarray
    atoms: list[AtomT]
    labels: np.ndarray
    slices: np.ndarray

    def __post_init__(self) -> None:
        """Validate alignment of sticks, atoms and memberships."""
        self.nu = np.asarray(self.nu, dtype=float)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        self.slices = np.asarray(self.slices, dtype=float)
        if len(self.nu) != len(self.atoms):
            raise StateCorruptionError(
                f"{len(self.nu)} sticks but {len(self.atoms)} atoms"
            )
        self.check_labels()

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def weights(self) -> np.ndarray:
        return stick_weights(self.nu)

    def counts(self) -> np.ndarray:
        """Number of units referencing each atom."""
        return np.bincount(self.labels, minlength=self.n_atoms)

    def occupied(self) -> int:
        return int(np.count_nonzero(self.counts()))

    def slice_mask(self) -> np.ndarray:
        """Boolean n x H matrix of 1(h in A(u_i))."""
        return self.weights[None, :] > self.slices[:, None]

    def check_labels(self) -> None:
        """Raise if any unit references a missing atom."""
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.n_atoms):
            raise StateCorruptionError(
                f"Membership outside 0..{self.n_atoms - 1}: "
                f"min {self.labels.min()}, max {self.labels.max()}"
            )


@dataclass(frozen=True, eq=False)
class CoefficientPartition:
    """Grouping of flat coefficient positions into independently clustered blocks.

    ``resolution`` gives one block per level (fPDPM), ``tied`` one block for
    all detail coefficients (global DPM) and ``coefficient`` one block per
    scalar coefficient, scaling included (per-coefficient DP).
    """

    grid: Grid
    kind: PartitionKind
    indices: tuple[np.ndarray, ...]

    @classmethod
    def by_resolution(cls, grid: Grid) -> "CoefficientPartition":
        return cls(grid, "resolution", tuple(grid.level_indices(j) for j in range(grid.n_levels)))

    @classmethod
    def tied(cls, grid: Grid) -> "CoefficientPartition":
        return cls(grid, "tied", (np.arange(1, grid.L),))

    @classmethod
    def per_coefficient(cls, grid: Grid) -> "CoefficientPartition":
        return cls(grid, "coefficient", tuple(np.array([k]) for k in range(grid.L)))

    @property
    def n_blocks(self) -> int:
        return len(self.indices)

    def block_size(self, b: int) -> int:
        return int(self.indices[b].shape[0])

    def level_blocks(self) -> np.ndarray:
        """Block holding the first coefficient of each resolution level."""
        owner = np.empty(self.grid.L, dtype=np.int64)
        for b, idx in enumerate(self.indices):
            owner[idx] = b
        return np.array([owner[self.grid.level_offsets[j]] for j in range(self.grid.n_levels)])


@dataclass
class MixtureState:
    """Full MCMC state of the fPDPM sampler.

    Args:
        blocks: One coefficient mixture per partition block
        covariance: Mixture over covariance atoms
        eta: Latent factors per unit, length K of its covariance atom
        partition: Block structure of the coefficient vector
        family: Wavelet family of the coefficient domain
        iteration: Completed sweeps
    """

    blocks: list[StickBreakingMixture[CoefficientAtom]]
    covariance: StickBreakingMixture[CovarianceAtom]
    eta: list[np.ndarray]
    partition: CoefficientPartition
    family: WaveletFamily = WaveletFamily.HAAR
    iteration: int = 0

    @property
    def n(self) -> int:
        return len(self.eta)

    @property
    def grid(self) -> Grid:
        return self.partition.grid

    def unit_atom(self, i: int) -> CovarianceAtom:
        return self.covariance.atoms[int(self.covariance.labels[i])]

    def check(self) -> None:
        """Raise StateCorruptionError on dangling memberships or eta mismatch."""
        for mixture in (*self.blocks, self.covariance):
            mixture.check_labels()
        for i, eta in enumerate(self.eta):
            if eta.shape != (self.unit_atom(i).K,):
                raise StateCorruptionError(
                    f"eta of unit {i} has shape {eta.shape}, atom has K={self.unit_atom(i).K}"
                )


@dataclass
class FunctionalDataset:
    """n observed images on a common dyadic grid.

    Args:
        images: Array of shape (n, *grid.dims)
        grid: Dyadic grid
        padding: Embedding record when the inputs were zero-padded
        offsets: Per-unit means removed by centering (zeros if not centered)
    """

    images: np.ndarray
    grid: Grid
    padding: PaddingRecord | None = None
    offsets: np.ndarray | None = None

    def __post_init__(self) -> None:
        """Validate image stack against the grid."""
        self.images = np.asarray(self.images, dtype=float)
        if self.images.shape[1:] != self.grid.dims:
            raise DimensionError(
                f"Images have shape {self.images.shape[1:]}, grid is {self.grid.dims}"
            )
        if self.offsets is None:
            self.offsets = np.zeros(self.n)
        if not np.all(np.isfinite(self.images)):
            raise ParameterError("Images contain non-finite values")

    @property
    def n(self) -> int:
        return int(self.images.shape[0])

    def flat(self) -> np.ndarray:
        """Data-space matrix of shape (n, L), row-major pixel order."""
        return self.images.reshape(self.n, -1)

    @classmethod
    def from_matrix(
        cls,
        matrix: np.ndarray,
        image_shape: tuple[int, ...] | None = None,
        pad: bool = False,
        center: bool = True,
    ) -> "FunctionalDataset":
        """Build a dataset from an image stack or a unit-per-row matrix.

        Args:
            matrix: (n, rows, cols) or (n, length) images, or an (n, L) matrix
                of row-major pixels when image_shape is given
            image_shape: Shape each row is reshaped to
            pad: Zero-pad non-dyadic images to the enclosing dyadic grid
            center: Subtract each unit's mean over the original support

        Raises:
            DimensionError: If images are not dyadic and pad is False
        """
        images = np.asarray(matrix, dtype=float)
        if image_shape is not None:
            if int(np.prod(image_shape)) != images[0].size:
                raise DimensionError(
                    f"Rows of length {images[0].size} cannot be reshaped to {image_shape}"
                )
            images = images.reshape((images.shape[0], *image_shape))
        if images.ndim not in (2, 3):
            raise DimensionError(f"Expected (n, length) or (n, rows, cols), got {images.shape}")
        offsets = images.reshape(images.shape[0], -1).mean(axis=1) if center else np.zeros(images.shape[0])
        if center:
            images = images - offsets.reshape((-1,) + (1,) * (images.ndim - 1))
        shape = tuple(images.shape[1:])
        target = Grid.enclosing(shape)
        padding = None
        if target.dims != shape:
            if not pad:
                raise DimensionError(
                    f"Image shape {shape} is not dyadic; enable padding to embed it in {target.dims}"
                )
            images, padding = pad_to_dyadic(images, target.dims)
        return cls(images=images, grid=target, padding=padding, offsets=offsets)


@dataclass
class Trace:
    """Retained posterior samples of one chain.

    Labels are 1-based. ``memberships`` is aligned with resolution levels
    (R x n x (J+1)); ``block_memberships`` holds one column per partition
    block. ``occupied`` counts occupied clusters per block with the
    covariance family in the last column. ``means`` are data-space mean
    functions on the (possibly padded) grid, without centering offsets.
    """

    memberships: np.ndarray
    block_memberships: np.ndarray
    covariance_memberships: np.ndarray
    factor_counts: np.ndarray
    occupied: np.ndarray
    sweep_seconds: np.ndarray
    seed: int
    method: str
    dims: tuple[int, ...]
    means: np.ndarray | None = None
    offsets: np.ndarray | None = None
    padding: PaddingRecord | None = None
    iterations: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @property
    def n_retained(self) -> int:
        return int(self.memberships.shape[0])

    @property
    def n_units(self) -> int:
        return int(self.memberships.shape[1])

    def mean_functions(self) -> np.ndarray:
        """Recorded means reshaped to images and cropped to the original support.

        Raises:
            ParameterError: If the chain did not record means
        """
        if self.means is None:
            raise ParameterError("Trace has no recorded mean functions")
        images = self.means.reshape((*self.means.shape[:2], *self.dims))
        if self.padding is not None:
            images = crop(images, self.padding)
        return images
