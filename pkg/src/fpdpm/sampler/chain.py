"""Chain initialization and the full Gibbs sweep loop."""

import logging
import time
import warnings

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from ..errors import NumericError
from ..model import (
    CoefficientAtom,
    CoefficientPartition,
    FunctionalDataset,
    Hyperparameters,
    MixtureState,
    StickBreakingMixture,
    Trace,
    compose_means,
    draw_coefficient_atom,
    draw_covariance_atom,
    mean_coefficients,
)
from ..wavelet import WaveletFamily
from .models import ChainConfig, SweepData
from .steps import (
    adapt_factor_count,
    collect_unused_sticks,
    extend_sticks,
    step_slice_aux,
    step_update_coefficients,
    step_update_factors,
    step_update_hyperlatents,
    step_update_loadings,
    step_update_memberships,
    step_update_variance,
    step_update_weights,
)

logger = logging.getLogger(__name__)

INIT_CLUSTERS = 5


def _initial_sticks(labels: np.ndarray, H: int, alpha: float, rng: np.random.Generator) -> np.ndarray:  # noqa: N803
    """nu_h ~ Beta(1 + n_h, alpha + n_{>h}) given initial memberships."""
    counts = np.bincount(labels, minlength=H)
    later = np.concatenate([np.cumsum(counts[::-1])[::-1][1:], [0]])
    return rng.beta(1.0 + counts, alpha + later)


def _kmeans_block(
    values: np.ndarray, hyper: Hyperparameters, b: int, rng: np.random.Generator
) -> StickBreakingMixture[CoefficientAtom]:
    distinct = np.unique(values, axis=0).shape[0]
    k = max(1, min(INIT_CLUSTERS, distinct))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        km = KMeans(n_clusters=k, n_init=3, random_state=int(rng.integers(2**31 - 1)))
        labels = km.fit_predict(values)
    atoms = []
    for g in range(k):
        prior = draw_coefficient_atom(hyper, b, values.shape[1], rng)
        atoms.append(CoefficientAtom(level=b, value=km.cluster_centers_[g], tau2=prior.tau2))
    alpha = hyper.alpha_for(b)
    return StickBreakingMixture(
        alpha=alpha,
        nu=_initial_sticks(labels, k, alpha, rng),
        atoms=atoms,
        labels=labels,
        slices=np.zeros(values.shape[0]),
    )


def initialize_state(
    data: SweepData,
    hyper: Hyperparameters,
    partition: CoefficientPartition,
    rng: np.random.Generator,
) -> MixtureState:
    """Warm start: k-means memberships per block, one covariance cluster.

    Atoms start at the k-means centers, tau2 from the prior, sigma2 at the
    residual variance, eta at zero and the loadings from the prior.
    """
    blocks = [
        _kmeans_block(data.coefficients[:, idx], hyper, b, rng)
        for b, idx in enumerate(partition.indices)
    ]
    atom = draw_covariance_atom(hyper, data.grid.L, rng)
    covariance = StickBreakingMixture(
        alpha=hyper.alpha_sigma,
        nu=_initial_sticks(np.zeros(data.n, dtype=np.int64), 1, hyper.alpha_sigma, rng),
        atoms=[atom],
        labels=np.zeros(data.n, dtype=np.int64),
        slices=np.zeros(data.n),
    )
    state = MixtureState(
        blocks=blocks,
        covariance=covariance,
        eta=[np.zeros(atom.K) for _ in range(data.n)],
        partition=partition,
        family=data.family,
    )
    residual = data.coefficients - mean_coefficients(state)
    atom.sigma2 = max(float(np.var(residual)), 1e-6)
    return state


def sweep(
    state: MixtureState,
    data: SweepData,
    hyper: Hyperparameters,
    rng: np.random.Generator,
) -> None:
    """One full Gibbs sweep, advancing state.iteration."""
    step_slice_aux(state, rng)
    step_update_weights(state, rng)
    extend_sticks(state, hyper, rng)
    step_update_memberships(state, data, rng)
    step_update_factors(state, data, rng)
    step_update_coefficients(state, data, hyper, rng)
    step_update_loadings(state, data, rng)
    adapt_factor_count(state, state.iteration, hyper, rng)
    step_update_variance(state, data, hyper, rng)
    step_update_hyperlatents(state, hyper, rng)
    collect_unused_sticks(state)
    state.iteration += 1


def _non_finite_block(state: MixtureState) -> str | None:
    for b, mixture in enumerate(state.blocks):
        for atom in mixture.atoms:
            if not (np.all(np.isfinite(atom.value)) and np.all(np.isfinite(atom.tau2))):
                return f"coefficients (block {b})"
    for s, atom in enumerate(state.covariance.atoms):
        if not np.isfinite(atom.sigma2):
            return f"variance (covariance atom {s})"
        if not np.all(np.isfinite(atom.Lambda)):
            return f"loadings (covariance atom {s})"
        if not (np.all(np.isfinite(atom.phi)) and np.all(np.isfinite(atom.delta))):
            return f"shrinkage (covariance atom {s})"
    if not all(np.all(np.isfinite(eta)) for eta in state.eta):
        return "factors"
    return None


def _diagnostic(state: MixtureState) -> dict[str, object]:
    return {
        "occupied": [m.occupied() for m in state.blocks],
        "sigma2": [a.sigma2 for a in state.covariance.atoms],
        "factor_counts": [a.K for a in state.covariance.atoms],
    }


def run_chain(
    data: FunctionalDataset,
    hyper: Hyperparameters,
    config: ChainConfig,
    partition: CoefficientPartition | None = None,
    family: WaveletFamily = WaveletFamily.HAAR,
    method: str = "fpdpm",
) -> Trace:
    """Run one seeded chain and collect the retained sweeps.

    Args:
        data: Dyadic, centered dataset
        hyper: Model hyperparameters
        config: Run length and recording controls
        partition: Coefficient blocks; one block per resolution by default
        family: Wavelet family of the coefficient domain
        method: Tag stored in the trace

    Returns:
        Trace of the retained sweeps

    Raises:
        NumericError: If the state becomes non-finite; carries the sweep and block
    """
    partition = partition or CoefficientPartition.by_resolution(data.grid)
    rng = np.random.default_rng(config.seed)
    prepared = SweepData.from_dataset(data, family)
    state = initialize_state(prepared, hyper, partition, rng)
    level_blocks = partition.level_blocks()

    R, n, L = config.n_retained, data.n, data.grid.L  # noqa: N806
    B = partition.n_blocks  # noqa: N806
    block_labels = np.zeros((R if config.record_memberships else 0, n, B), dtype=np.int64)
    cov_labels = np.zeros((R if config.record_memberships else 0, n), dtype=np.int64)
    means = np.zeros((R, n, L)) if config.record_means else None
    factor_counts = np.zeros((R if config.record_factor_counts else 0, n), dtype=np.int64)
    occupied = np.zeros((R, B + 1), dtype=np.int64)
    seconds = np.zeros(config.n_iter if config.record_timings else 0)
    kept_iterations = np.zeros(R, dtype=np.int64)

    logger.info(
        f"Starting {method} chain: n={n}, grid={data.grid.dims}, blocks={B}, "
        f"sweeps={config.n_iter}, seed={config.seed}"
    )
    r = 0
    for it in range(config.n_iter):
        started = time.perf_counter()
        try:
            sweep(state, prepared, hyper, rng)
        except NumericError as e:
            raise NumericError(
                f"Non-finite value at sweep {it}: {e}",
                iteration=it,
                block=e.block or "density",
                diagnostic=_diagnostic(state),
                original_error=e,
            ) from e
        elapsed = time.perf_counter() - started
        if config.record_timings:
            seconds[it] = elapsed

        bad = _non_finite_block(state)
        if bad is not None:
            raise NumericError(
                f"Non-finite {bad} at sweep {it}",
                iteration=it,
                block=bad,
                diagnostic=_diagnostic(state),
            )

        if config.log_every and (it + 1) % config.log_every == 0:
            logger.debug(
                f"Sweep {it + 1}/{config.n_iter}: occupied="
                f"{[m.occupied() for m in state.blocks]}, "
                f"K={[a.K for a in state.covariance.atoms]}, {elapsed:.4f}s"
            )

        if not config.is_retained(it):
            continue
        if config.record_memberships:
            block_labels[r] = np.column_stack([m.labels for m in state.blocks]) + 1
            cov_labels[r] = state.covariance.labels + 1
        if means is not None:
            means[r] = compose_means(state)
        if config.record_factor_counts:
            ks = np.array([a.K for a in state.covariance.atoms])
            factor_counts[r] = ks[state.covariance.labels]
        occupied[r] = [*(m.occupied() for m in state.blocks), state.covariance.occupied()]
        kept_iterations[r] = it
        r += 1

    logger.info(f"Finished {method} chain (seed {config.seed}): kept {r} sweeps")
    return Trace(
        memberships=block_labels[:, :, level_blocks],
        block_memberships=block_labels,
        covariance_memberships=cov_labels,
        factor_counts=factor_counts,
        occupied=occupied,
        sweep_seconds=seconds,
        seed=config.seed,
        method=method,
        dims=data.grid.dims,
        means=means,
        offsets=data.offsets,
        padding=data.padding,
        iterations=kept_iterations,
    )
