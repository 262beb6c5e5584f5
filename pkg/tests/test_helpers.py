"""Builders for small hand-made sampler states and traces."""

import numpy as np

from fpdpm.model import (
    CoefficientAtom,
    CoefficientPartition,
    CovarianceAtom,
    MixtureState,
    StickBreakingMixture,
    Trace,
)
from fpdpm.wavelet import Grid


def covariance_atom(L: int, K: int, sigma2: float, rng: np.random.Generator) -> CovarianceAtom:  # noqa: N803
    """Covariance atom with standard-normal loadings and unit shrinkage."""
    return CovarianceAtom(
        Lambda=rng.standard_normal((L, K)) if K else np.zeros((L, 0)),
        sigma2=sigma2,
        phi=np.ones((L, K)),
        delta=np.ones(K),
    )


def make_state(
    grid: Grid,
    n: int,
    rng: np.random.Generator,
    atoms_per_block: int = 2,
    K: int = 0,  # noqa: N803
    sigma2: float = 0.5,
) -> MixtureState:
    """State with per-level blocks, labels cycling over the atoms and one covariance atom."""
    partition = CoefficientPartition.by_resolution(grid)
    blocks = []
    for b, idx in enumerate(partition.indices):
        atoms = [
            CoefficientAtom(level=b, value=rng.standard_normal(idx.size), tau2=np.ones(idx.size))
            for _ in range(atoms_per_block)
        ]
        blocks.append(
            StickBreakingMixture(
                alpha=1.0,
                nu=np.full(atoms_per_block, 0.4),
                atoms=atoms,
                labels=np.arange(n) % atoms_per_block,
                slices=np.zeros(n),
            )
        )
    covariance = StickBreakingMixture(
        alpha=1.0,
        nu=np.array([0.9]),
        atoms=[covariance_atom(grid.L, K, sigma2, rng)],
        labels=np.zeros(n, dtype=np.int64),
        slices=np.zeros(n),
    )
    return MixtureState(
        blocks=blocks,
        covariance=covariance,
        eta=[np.zeros(K) for _ in range(n)],
        partition=partition,
    )


def make_trace(
    memberships: np.ndarray,
    dims: tuple[int, ...] = (4, 4),
    means: np.ndarray | None = None,
    seed: int = 0,
) -> Trace:
    """Trace around given (R, n, levels) memberships with one covariance cluster."""
    memberships = np.asarray(memberships, dtype=np.int64)
    R, n, levels = memberships.shape  # noqa: N806
    return Trace(
        memberships=memberships,
        block_memberships=memberships.copy(),
        covariance_memberships=np.ones((R, n), dtype=np.int64),
        factor_counts=np.zeros((R, n), dtype=np.int64),
        occupied=np.array(
            [[*(np.unique(memberships[r, :, j]).size for j in range(levels)), 1] for r in range(R)]
        ),
        sweep_seconds=np.full(R, 0.01),
        seed=seed,
        method="fpdpm",
        dims=dims,
        means=means,
        offsets=np.zeros(n),
        iterations=np.arange(R),
    )
