"""Joint-distribution check of the Gibbs sweep on a tiny problem.

Forward draws of (beta, tau2, sigma2) from the priors are compared with the
marginals of a chain that alternates one sweep with a fresh draw of the data
given the current state. Both target the prior, so their moments must agree.
"""

import numpy as np
import pytest

from fpdpm.model import (
    CoefficientPartition,
    Hyperparameters,
    MixtureState,
    StickBreakingMixture,
    draw_coefficient_atom,
    draw_covariance_atom,
    mean_coefficients,
)
from fpdpm.sampler import SweepData, sweep
from fpdpm.wavelet import Grid, WaveletFamily, synthesize

pytestmark = pytest.mark.slow

GRID = Grid((4,))
N_UNITS = 3
HYPER = Hyperparameters(independent_errors=True)
STATISTICS = ("beta", "beta^2", "tau2", "sigma2")


def prior_state(rng: np.random.Generator) -> MixtureState:
    """One instantiated stick per family, atoms from the base measures."""
    partition = CoefficientPartition.by_resolution(GRID)
    blocks = [
        StickBreakingMixture(
            alpha=HYPER.alpha_for(b),
            nu=np.array([rng.beta(1.0, HYPER.alpha_for(b))]),
            atoms=[draw_coefficient_atom(HYPER, b, idx.size, rng)],
            labels=np.zeros(N_UNITS, dtype=np.int64),
            slices=np.zeros(N_UNITS),
        )
        for b, idx in enumerate(partition.indices)
    ]
    covariance = StickBreakingMixture(
        alpha=HYPER.alpha_sigma,
        nu=np.array([rng.beta(1.0, HYPER.alpha_sigma)]),
        atoms=[draw_covariance_atom(HYPER, GRID.L, rng)],
        labels=np.zeros(N_UNITS, dtype=np.int64),
        slices=np.zeros(N_UNITS),
    )
    return MixtureState(
        blocks=blocks,
        covariance=covariance,
        eta=[np.zeros(0) for _ in range(N_UNITS)],
        partition=partition,
    )


def draw_data(state: MixtureState, rng: np.random.Generator) -> SweepData:
    """Observations given the state: means plus independent errors of each unit's atom."""
    sigma = np.sqrt([state.unit_atom(i).sigma2 for i in range(N_UNITS)])
    coefficients = mean_coefficients(state) + sigma[:, None] * rng.standard_normal(
        (N_UNITS, GRID.L)
    )
    return SweepData(
        flat=synthesize(coefficients, GRID).reshape(N_UNITS, -1),
        coefficients=coefficients,
        grid=GRID,
        family=WaveletFamily.HAAR,
    )


def unit_statistics(state: MixtureState) -> list[float]:
    mixture = state.blocks[0]
    atom = mixture.atoms[int(mixture.labels[0])]
    beta = float(atom.value[0])
    return [beta, beta**2, float(atom.tau2[0]), float(state.unit_atom(0).sigma2)]


def batch_standard_error(samples: np.ndarray, n_batches: int = 40) -> np.ndarray:
    """Standard error of column means from non-overlapping batch means."""
    usable = samples.shape[0] - samples.shape[0] % n_batches
    batches = samples[:usable].reshape(n_batches, -1, samples.shape[1]).mean(axis=1)
    return batches.std(axis=0, ddof=1) / np.sqrt(n_batches)


def test_forward_and_gibbs_moments_agree() -> None:
    """Test that prior draws and the data-refreshing chain share first and second moments."""
    rng = np.random.default_rng(2718)
    n_draws = 20000

    forward = np.empty((n_draws, len(STATISTICS)))
    for t in range(n_draws):
        atom = draw_coefficient_atom(HYPER, 0, 1, rng)
        beta = float(atom.value[0])
        sigma2 = draw_covariance_atom(HYPER, GRID.L, rng).sigma2
        forward[t] = [beta, beta**2, float(atom.tau2[0]), sigma2]

    state = prior_state(rng)
    data = draw_data(state, rng)
    for _ in range(1000):
        sweep(state, data, HYPER, rng)
        data = draw_data(state, rng)
    gibbs = np.empty((n_draws, len(STATISTICS)))
    for t in range(n_draws):
        sweep(state, data, HYPER, rng)
        gibbs[t] = unit_statistics(state)
        data = draw_data(state, rng)

    forward_se = forward.std(axis=0, ddof=1) / np.sqrt(n_draws)
    z = (forward.mean(axis=0) - gibbs.mean(axis=0)) / np.hypot(
        forward_se, batch_standard_error(gibbs)
    )
    for name, value in zip(STATISTICS, z, strict=True):
        assert abs(value) < 4.0, f"{name}: z = {value:.2f}"
