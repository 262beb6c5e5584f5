"""Data-generating mechanisms of the simulation scenarios."""

import logging

import numpy as np

from ..errors import DimensionError, ParameterError
from ..model import CovarianceAtom
from ..postproc import relabel
from ..wavelet import Grid, synthesize
from .models import (
    CIRCLE_CENTERS,
    ERROR_VARIANCES,
    LOCAL_LEVEL_PARAMS,
    ErrorModel,
    GeneratedDataset,
    Scenario,
    ScenarioConfig,
)

logger = logging.getLogger(__name__)


def snr(truth: np.ndarray, errors: np.ndarray) -> float:
    """Mean over units of 10 log10(||theta_i||^2 / ||eps_i||^2).

    Units with zero noise or zero signal are left out with a warning.

    Raises:
        ParameterError: If the shapes differ
    """
    truth = np.asarray(truth, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if truth.shape != errors.shape:
        raise ParameterError(f"Truth {truth.shape} and errors {errors.shape} differ in shape")
    signal = np.sum(truth.reshape(truth.shape[0], -1) ** 2, axis=1)
    noise = np.sum(errors.reshape(errors.shape[0], -1) ** 2, axis=1)
    usable = (noise > 0) & (signal > 0)
    if not np.all(usable):
        logger.warning(
            f"Excluding {int(np.sum(~usable))} unit(s) with zero noise or zero signal from SNR"
        )
    if not np.any(usable):
        return float("nan")
    return float(np.mean(10.0 * np.log10(signal[usable] / noise[usable])))


def gen_errors(
    config: ScenarioConfig, truth: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, list[CovarianceAtom]]:
    """Draw errors from three covariance clusters assigned uniformly.

    Independent errors use sigma2 in {0.001, 0.005, 0.01}. Correlated errors
    add K spike-and-slab loading columns (lambda ~ z N(0, s^2), z ~ Ber(0.5)).

    Returns:
        Tuple of (errors (n, L), 1-based covariance labels, covariance atoms)
    """
    n, L = truth.shape  # noqa: N806
    K = config.error_model.rank  # noqa: N806
    atoms = []
    for sigma2 in ERROR_VARIANCES:
        slab = rng.normal(0.0, config.slab_sd, size=(L, K))
        spike = rng.random((L, K)) < 0.5
        loadings = np.where(spike, slab, 0.0)
        atoms.append(
            CovarianceAtom(Lambda=loadings, sigma2=sigma2, phi=np.ones((L, K)), delta=np.ones(K))
        )
    labels = rng.integers(0, len(atoms), size=n)
    errors = np.empty((n, L))
    for s, atom in enumerate(atoms):
        units = np.flatnonzero(labels == s)
        factors = rng.standard_normal((units.size, K))
        idiosyncratic = rng.normal(0.0, np.sqrt(atom.sigma2), size=(units.size, L))
        errors[units] = factors @ atom.Lambda.T + idiosyncratic
    return errors, labels + 1, atoms


def _finish(
    config: ScenarioConfig,
    truth: np.ndarray,
    labels: np.ndarray,
    global_labels: np.ndarray,
    rng: np.random.Generator,
) -> GeneratedDataset:
    errors, cov_labels, atoms = gen_errors(config, truth, rng)
    ratio = snr(truth, errors)
    logger.info(
        f"Generated {config.scenario} scenario: n={config.n}, grid={config.dims}, "
        f"errors={config.error_model}, SNR={ratio:.2f} dB"
    )
    return GeneratedDataset(
        observed=truth + errors,
        truth=truth,
        errors=errors,
        labels=labels,
        covariance_labels=cov_labels,
        global_labels=global_labels,
        snr=ratio,
        grid=config.grid,
        covariance_atoms=atoms,
    )


def _require(config: ScenarioConfig, scenario: Scenario) -> Grid:
    if config.scenario is not scenario:
        raise ParameterError(f"Config is for the {config.scenario} scenario, not {scenario}")
    return config.grid


def gen_scenario_global(config: ScenarioConfig, rng: np.random.Generator) -> GeneratedDataset:
    """Level-0 patterns only; atoms from 0.5 N(2, 1) + 0.5 N(-2, 1)."""
    grid = _require(config, Scenario.GLOBAL)
    m0 = grid.level_size(0)
    H = config.n_global_clusters  # noqa: N806
    signs = np.where(rng.random((H, m0)) < 0.5, 2.0, -2.0)
    atoms = rng.normal(signs, 1.0)
    labels = rng.integers(0, H, size=config.n)

    coefficients = np.zeros((config.n, grid.L))
    coefficients[:, grid.level_slice(0)] = atoms[labels]
    truth = synthesize(coefficients, grid).reshape(config.n, -1)
    return _finish(config, truth, labels[:, None] + 1, labels + 1, rng)


def gen_scenario_local(config: ScenarioConfig, rng: np.random.Generator) -> GeneratedDataset:
    """Independent clusterings at levels 0-2 with atoms Z * N(mu_j 1, I).

    Raises:
        DimensionError: If the grid has fewer than three levels
    """
    grid = _require(config, Scenario.LOCAL)
    if grid.n_levels < len(LOCAL_LEVEL_PARAMS):
        raise DimensionError(f"Local scenario needs at least 3 levels, grid {grid.dims} has {grid.n_levels}")
    H = config.n_local_clusters  # noqa: N806
    coefficients = np.zeros((config.n, grid.L))
    labels = np.empty((config.n, len(LOCAL_LEVEL_PARAMS)), dtype=np.int64)
    for j, (mu, p_zero) in enumerate(LOCAL_LEVEL_PARAMS):
        m_j = grid.level_size(j)
        base = rng.normal(mu, 1.0, size=(H, m_j))
        z = rng.choice([-1.0, 0.0, 1.0], size=H, p=[(1 - p_zero) / 2, p_zero, (1 - p_zero) / 2])
        atoms = z[:, None] * base
        level_labels = rng.integers(0, H, size=config.n)
        coefficients[:, grid.level_slice(j)] = atoms[level_labels]
        labels[:, j] = level_labels + 1
    truth = synthesize(coefficients, grid).reshape(config.n, -1)
    triples = labels @ np.array([H * H, H, 1])
    return _finish(config, truth, labels, relabel(triples), rng)


def circle_masks(grid: Grid, radius2: float = 0.025) -> np.ndarray:
    """Boolean (4, rows, cols) masks of ||v - c||^2 < radius2 on cell centers in [0, 1]^2."""
    if grid.d != 2:
        raise DimensionError(f"Spatial scenario needs a 2-D grid, got {grid.dims}")
    side = grid.dims[0]
    coords = (np.arange(side) + 0.5) / side
    x, y = np.meshgrid(coords, coords, indexing="xy")
    return np.stack([(x - cx) ** 2 + (y - cy) ** 2 < radius2 for cx, cy in CIRCLE_CENTERS])


def gen_scenario_spatial(config: ScenarioConfig, rng: np.random.Generator) -> GeneratedDataset:
    """Four circles, each constant at +amplitude or -amplitude per unit; 16 patterns."""
    grid = _require(config, Scenario.SPATIAL)
    masks = circle_masks(grid, config.circle_radius2).astype(float)
    bits = rng.integers(0, 2, size=(config.n, len(CIRCLE_CENTERS)))
    values = np.where(bits == 1, config.amplitude, -config.amplitude)
    truth = np.einsum("nm,mrc->nrc", values, masks).reshape(config.n, -1)
    pattern = bits @ (2 ** np.arange(len(CIRCLE_CENTERS)))
    return _finish(config, truth, pattern[:, None] + 1, pattern + 1, rng)


def generate(config: ScenarioConfig) -> GeneratedDataset:
    """Generate the configured scenario from a generator seeded with config.seed."""
    rng = np.random.default_rng(config.seed)
    generators = {
        Scenario.GLOBAL: gen_scenario_global,
        Scenario.LOCAL: gen_scenario_local,
        Scenario.SPATIAL: gen_scenario_spatial,
    }
    return generators[config.scenario](config, rng)
