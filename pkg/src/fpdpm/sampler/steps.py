"""Conditional updates of the slice-sampled fPDPM Gibbs sweep.

Every step mutates the MixtureState in place. Coefficient-domain quantities
come from ``SweepData.coefficients``; loadings live in data space and are
rotated into the coefficient domain whenever a density or residual needs
them. The transform is orthonormal, so both domains give the same Gaussian
densities.
"""

import logging
from collections.abc import Iterable
from typing import Literal

import numpy as np
from scipy import linalg
from scipy.special import logsumexp

from ..errors import ConfigurationError, StateCorruptionError
from ..model import (
    VARIANCE_FLOOR,
    CoefficientAtom,
    CovarianceAtom,
    Hyperparameters,
    LowRankGaussian,
    MixtureState,
    StickBreakingMixture,
    compose_means,
    draw_coefficient_atom,
    draw_from_base_measures,
    draw_loading_column,
    mean_coefficients,
)
from .models import SweepData

logger = logging.getLogger(__name__)

MAX_STICK_EXTENSIONS = 1_000_000


def _families(state: MixtureState) -> Iterable[tuple[str, StickBreakingMixture]]:
    for b, mixture in enumerate(state.blocks):
        yield f"block {b}", mixture
    yield "covariance", state.covariance


def _factor_residuals(state: MixtureState, data: SweepData) -> np.ndarray:
    """Coefficient-domain Lambda_{h_is} eta_i for every unit, shape (n, L)."""
    out = np.zeros((state.n, data.grid.L))
    for s, atom in enumerate(state.covariance.atoms):
        units = np.flatnonzero(state.covariance.labels == s)
        if atom.K == 0 or units.size == 0:
            continue
        eta = np.stack([state.eta[i] for i in units])
        out[units] = eta @ data.rotate(atom).T
    return out


def _categorical(log_probs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One draw per row from unnormalized log probabilities."""
    probs = np.exp(log_probs - logsumexp(log_probs, axis=1, keepdims=True))
    cdf = np.cumsum(probs, axis=1)
    u = rng.random(log_probs.shape[0]) * cdf[:, -1]
    choice = np.sum(cdf <= u[:, None], axis=1)
    return np.minimum(choice, log_probs.shape[1] - 1)


def step_slice_aux(state: MixtureState, rng: np.random.Generator) -> None:
    """Step 1: u ~ U(0, w_h) for the current cluster of every unit and family.

    Raises:
        StateCorruptionError: If an occupied cluster has zero weight
    """
    for name, mixture in _families(state):
        mixture.check_labels()
        current = mixture.weights[mixture.labels]
        if np.any(current <= 0):
            raise StateCorruptionError(f"Occupied cluster with zero weight in {name}")
        mixture.slices = current * rng.random(current.shape[0])


def truncated_stick_draw(
    a: float, b: float, alpha: float, rng: np.random.Generator
) -> float:
    """Inverse-CDF draw of nu from Beta(1, alpha) truncated to [a, b].

    When a > b from rounding the draw is clamped to a.
    """
    if a > b:
        logger.warning(f"Stick bounds crossed (a={a!r} > b={b!r}); clamping to a")
        return a
    upper = (1.0 - a) ** alpha
    lower = (1.0 - b) ** alpha
    u = rng.random()
    nu = 1.0 - (upper - u * (upper - lower)) ** (1.0 / alpha)
    return float(np.clip(nu, a, b))


def _update_sticks(mixture: StickBreakingMixture, rng: np.random.Generator) -> None:
    H = mixture.n_atoms  # noqa: N806
    nu = mixture.nu.copy()
    labels, slices = mixture.labels, mixture.slices
    for h in range(H):
        before = np.prod(1.0 - nu[:h])
        own = labels == h
        a = float(np.max(slices[own]) / before) if np.any(own) else 0.0

        later = labels > h
        b = 1.0
        if np.any(later):
            one_minus = 1.0 - nu
            one_minus[h] = 1.0
            prefix = np.concatenate([[1.0], np.cumprod(one_minus)[:-1]])
            g = labels[later]
            ratios = slices[later] / (nu[g] * prefix[g])
            b = 1.0 - float(np.max(ratios))
        nu[h] = truncated_stick_draw(a, b, mixture.alpha, rng)
    mixture.nu = nu


def step_update_weights(state: MixtureState, rng: np.random.Generator) -> None:
    """Step 2: redraw every stick fraction from its slice-truncated conditional."""
    for _, mixture in _families(state):
        _update_sticks(mixture, rng)


def extend_sticks(
    state: MixtureState, hyper: Hyperparameters, rng: np.random.Generator
) -> int:
    """Instantiate sticks until the unassigned mass is below the smallest slice.

    Returns:
        Number of sticks added over all families

    Raises:
        ConfigurationError: If a family needs more than a million extensions
    """
    added = 0
    targets: list[int | Literal["covariance"]] = [*range(len(state.blocks)), "covariance"]
    for target, (name, mixture) in zip(targets, _families(state), strict=True):
        size = state.grid.L if target == "covariance" else state.partition.block_size(target)
        u_star = float(np.min(mixture.slices))
        remaining = float(np.prod(1.0 - mixture.nu))
        new_nu: list[float] = []
        while remaining >= u_star:
            if len(new_nu) >= MAX_STICK_EXTENSIONS:
                raise ConfigurationError(
                    f"Stick mass in {name} did not reach 1 - {u_star!r} after "
                    f"{MAX_STICK_EXTENSIONS} extensions (alpha={mixture.alpha})",
                    field="alpha",
                )
            nu = float(rng.beta(1.0, mixture.alpha))
            new_nu.append(nu)
            remaining *= 1.0 - nu
            mixture.atoms.append(draw_from_base_measures(hyper, target, size, rng))
        if new_nu:
            mixture.nu = np.concatenate([mixture.nu, new_nu])
            added += len(new_nu)
    return added


def _block_log_probs(
    state: MixtureState,
    data: SweepData,
    b: int,
    residual: np.ndarray,
    kernels: list[LowRankGaussian],
) -> np.ndarray:
    mixture = state.blocks[b]
    idx = state.partition.indices[b]
    mask = mixture.slice_mask()
    values = np.stack([atom.value for atom in mixture.atoms])
    current = values[mixture.labels]
    log_probs = np.full(mask.shape, -np.inf)

    for s, kernel in enumerate(kernels):
        units = np.flatnonzero(state.covariance.labels == s)
        if units.size == 0:
            continue
        candidates = np.flatnonzero(np.any(mask[units], axis=0))
        base = residual[units].copy()
        base[:, idx] += current[units]
        trial = np.repeat(base[:, None, :], candidates.size, axis=1)
        trial[:, :, idx] -= values[candidates][None, :, :]
        scores = kernel.logpdf(trial)
        allowed = mask[np.ix_(units, candidates)]
        log_probs[np.ix_(units, candidates)] = np.where(allowed, scores, -np.inf)
    return log_probs


def _kernels(state: MixtureState, data: SweepData) -> list[LowRankGaussian]:
    return [LowRankGaussian(data.rotate(atom), atom.sigma2) for atom in state.covariance.atoms]


def membership_probabilities(state: MixtureState, data: SweepData, b: int) -> np.ndarray:
    """Normalized Step-3 probabilities of block b given every other membership.

    Returns:
        (n, H) array; atoms outside a unit's slice set get probability 0
    """
    residual = data.coefficients - mean_coefficients(state)
    log_probs = _block_log_probs(state, data, b, residual, _kernels(state, data))
    return np.exp(log_probs - logsumexp(log_probs, axis=1, keepdims=True))


def step_update_memberships(
    state: MixtureState, data: SweepData, rng: np.random.Generator
) -> None:
    """Step 3: draw block and covariance memberships with eta integrated out.

    Blocks are visited in order; each block's draw conditions on the
    memberships already refreshed for earlier blocks.

    Raises:
        StateCorruptionError: If a unit has an empty slice set
    """
    kernels = _kernels(state, data)
    residual = data.coefficients - mean_coefficients(state)

    for b, mixture in enumerate(state.blocks):
        empty = ~np.any(mixture.slice_mask(), axis=1)
        if np.any(empty):
            raise StateCorruptionError(
                f"Empty slice set in block {b} for units {np.flatnonzero(empty).tolist()}"
            )
        idx = state.partition.indices[b]
        old = np.stack([atom.value for atom in mixture.atoms])[mixture.labels]
        log_probs = _block_log_probs(state, data, b, residual, kernels)
        mixture.labels = _categorical(log_probs, rng)
        new = np.stack([atom.value for atom in mixture.atoms])[mixture.labels]
        residual[:, idx] += old - new

    cov = state.covariance
    mask = cov.slice_mask()
    if np.any(~np.any(mask, axis=1)):
        raise StateCorruptionError("Empty covariance slice set")
    log_probs = np.full(mask.shape, -np.inf)
    for s, kernel in enumerate(kernels):
        units = np.flatnonzero(mask[:, s])
        if units.size:
            log_probs[units, s] = kernel.logpdf(residual[units])
    previous = cov.labels.copy()
    cov.labels = _categorical(log_probs, rng)
    for i in np.flatnonzero(previous != cov.labels):
        state.eta[i] = np.zeros(cov.atoms[cov.labels[i]].K)


def factor_conditional(
    loadings: np.ndarray, sigma2: float, residuals: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Normal conditional of the factors of units sharing one covariance atom.

    P = I + Lambda^T Lambda / sigma2; eta_i ~ N(P^-1 Lambda^T r_i / sigma2, P^-1).

    Args:
        loadings: L x K loadings in the same domain as the residuals
        sigma2: Idiosyncratic variance
        residuals: (n_s, L) residuals y_i - theta_i

    Returns:
        Tuple of (means as (n_s, K), covariance as (K, K))
    """
    K = loadings.shape[1]  # noqa: N806
    precision = np.eye(K) + loadings.T @ loadings / sigma2
    chol = linalg.cholesky(precision, lower=True)
    mean = linalg.cho_solve((chol, True), (residuals @ loadings / sigma2).T).T
    covariance = linalg.cho_solve((chol, True), np.eye(K))
    return mean, covariance


def step_update_factors(
    state: MixtureState, data: SweepData, rng: np.random.Generator
) -> None:
    """Step 5: draw eta_i of every unit from factor_conditional."""
    residual = data.coefficients - mean_coefficients(state)
    for s, atom in enumerate(state.covariance.atoms):
        units = np.flatnonzero(state.covariance.labels == s)
        if units.size == 0:
            continue
        if atom.K == 0:
            for i in units:
                state.eta[i] = np.zeros(0)
            continue
        mean, covariance = factor_conditional(data.rotate(atom), atom.sigma2, residual[units])
        chol = linalg.cholesky(covariance, lower=True)
        noise = rng.standard_normal((units.size, atom.K)) @ chol.T
        for row, i in enumerate(units):
            state.eta[i] = mean[row] + noise[row]


def coefficient_conditional(
    state: MixtureState, data: SweepData, b: int, target: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Entrywise normal conditional of every atom of block b.

    Precision is the summed unit precisions 1/sigma2 plus 1/tau2; the mean
    is the precision-weighted sum of the members' coefficients divided by it.

    Args:
        state: Current state
        data: Observations
        b: Block index
        target: Coefficients with the factor term removed; computed when None

    Returns:
        Tuple of (means, precisions), each (H, m_b)
    """
    if target is None:
        target = data.coefficients - _factor_residuals(state, data)
    variances = np.array([atom.sigma2 for atom in state.covariance.atoms])
    unit_precision = 1.0 / variances[state.covariance.labels]
    mixture = state.blocks[b]
    idx = state.partition.indices[b]
    H = mixture.n_atoms  # noqa: N806
    weight = np.bincount(mixture.labels, weights=unit_precision, minlength=H)
    sums = np.zeros((H, idx.size))
    np.add.at(sums, mixture.labels, target[:, idx] * unit_precision[:, None])
    tau2 = np.stack([atom.tau2 for atom in mixture.atoms])
    precision = weight[:, None] + 1.0 / tau2
    return sums / precision, precision


def step_update_coefficients(
    state: MixtureState, data: SweepData, hyper: Hyperparameters, rng: np.random.Generator
) -> None:
    """Step 4: conjugate normal update of every coefficient atom.

    Residualizes against the factor term; other blocks occupy disjoint
    coefficients and drop out. Unoccupied atoms are refreshed from the
    base measure.
    """
    target = data.coefficients - _factor_residuals(state, data)
    for b, mixture in enumerate(state.blocks):
        mean, precision = coefficient_conditional(state, data, b, target)
        counts = mixture.counts()
        for g, atom in enumerate(mixture.atoms):
            if counts[g] == 0:
                mixture.atoms[g] = draw_coefficient_atom(hyper, b, atom.size, rng)
                continue
            atom.value = mean[g] + rng.standard_normal(atom.size) / np.sqrt(precision[g])


def loading_conditional(
    eta: np.ndarray, residuals: np.ndarray, prior_precision: np.ndarray, sigma2: float
) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise normal conditional of the loadings of one covariance atom.

    Row l has precision diag(prior_l) + eta^T eta / sigma2 and mean
    precision^-1 eta^T r_l / sigma2. Without members it reduces to the prior.

    Args:
        eta: (n_s, K) factors of the atom's members
        residuals: (n_s, L) data-space residuals y_i - theta_i
        prior_precision: (L, K) MGP precisions phi * xi * e
        sigma2: Idiosyncratic variance

    Returns:
        Tuple of (means as (L, K), precisions as (L, K, K))
    """
    K = prior_precision.shape[1]  # noqa: N806
    gram = eta.T @ eta / sigma2
    precision = gram[None, :, :] + prior_precision[:, :, None] * np.eye(K)[None, :, :]
    rhs = residuals.T @ eta / sigma2
    mean = np.linalg.solve(precision, rhs[:, :, None])[:, :, 0]
    return mean, precision


def step_update_loadings(
    state: MixtureState, data: SweepData, rng: np.random.Generator
) -> None:
    """Step 6: draw each loading row from loading_conditional."""
    theta = compose_means(state)
    for s, atom in enumerate(state.covariance.atoms):
        if atom.K == 0:
            continue
        units = np.flatnonzero(state.covariance.labels == s)
        eta = np.array([state.eta[i] for i in units], dtype=float).reshape(units.size, atom.K)
        mean, precision = loading_conditional(
            eta, data.flat[units] - theta[units], atom.prior_precision(), atom.sigma2
        )
        chol = np.linalg.cholesky(precision)
        z = rng.standard_normal(mean.shape)[:, :, None]
        noise = np.linalg.solve(np.swapaxes(chol, -1, -2), z)[:, :, 0]
        atom.Lambda = mean + noise


def adapt_factor_count(
    state: MixtureState, iteration: int, hyper: Hyperparameters, rng: np.random.Generator
) -> bool:
    """Drop redundant loading columns or append a new one with probability p(r).

    A column is redundant when at least a fraction q of its entries have
    absolute value below delta_thresh. Without redundant columns one column
    is appended from the MGP prior, up to the factor cap.

    Returns:
        Whether adaptation was attempted this sweep
    """
    settings = hyper.adapt
    if hyper.independent_errors or not settings.enabled:
        return False
    if rng.random() >= settings.probability(iteration):
        return False

    cap = hyper.factor_cap(state.grid.L)
    for s, atom in enumerate(state.covariance.atoms):
        units = np.flatnonzero(state.covariance.labels == s)
        small = np.mean(np.abs(atom.Lambda) < settings.delta_thresh, axis=0)
        redundant = small >= settings.q
        if np.all(redundant):
            redundant[0] = False
        if np.any(redundant):
            keep = ~redundant
            atom.Lambda = atom.Lambda[:, keep]
            atom.phi = atom.phi[:, keep]
            atom.delta = atom.delta[keep]
            for i in units:
                state.eta[i] = state.eta[i][keep]
            logger.debug(f"Covariance atom {s}: dropped {int(redundant.sum())} column(s), K={atom.K}")
        elif atom.K < cap:
            increment = float(rng.gamma(hyper.mgp.a2, 1.0))
            atom.delta = np.append(atom.delta, increment)
            column, phi = draw_loading_column(atom.xi[-1] * atom.e, atom.L, rng)
            atom.Lambda = np.column_stack([atom.Lambda, column])
            atom.phi = np.column_stack([atom.phi, phi])
            for i in units:
                state.eta[i] = np.append(state.eta[i], rng.standard_normal())
            logger.debug(f"Covariance atom {s}: appended a column, K={atom.K}")
    return True


def variance_conditional(
    state: MixtureState, data: SweepData, hyper: Hyperparameters
) -> tuple[np.ndarray, np.ndarray]:
    """Shape a_s + n_s L / 2 and rate b_s + SS_s / 2 of every sigma2_s.

    Returns:
        Tuple of (shapes, rates), one entry per covariance atom
    """
    prior = hyper.inv_gamma
    residual = data.coefficients - mean_coefficients(state) - _factor_residuals(state, data)
    squares = np.bincount(
        state.covariance.labels,
        weights=np.sum(residual * residual, axis=1),
        minlength=state.covariance.n_atoms,
    )
    shapes = prior.a_s + state.covariance.counts() * data.grid.L / 2.0
    return shapes, prior.b_s + squares / 2.0


def step_update_variance(
    state: MixtureState, data: SweepData, hyper: Hyperparameters, rng: np.random.Generator
) -> None:
    """Step 7: sigma2_s ~ InvGa(shape, rate) from variance_conditional; prior draw when empty."""
    shapes, rates = variance_conditional(state, data, hyper)
    for atom, shape, rate in zip(state.covariance.atoms, shapes, rates, strict=True):
        atom.sigma2 = max(1.0 / rng.gamma(shape, 1.0 / rate), VARIANCE_FLOOR)


def tau_update(atom: CoefficientAtom, omega2: float, rng: np.random.Generator) -> None:
    """1/tau2 ~ InvGaussian(sqrt(2 omega2) / |beta|, 2 omega2); Exp(omega2) refresh at beta = 0."""
    value = np.abs(atom.value)
    tau2 = np.empty_like(value)
    zero = value == 0
    if np.any(zero):
        logger.debug(f"Refreshing {int(zero.sum())} tau2 entries at beta = 0")
        tau2[zero] = rng.exponential(1.0 / omega2, size=int(zero.sum()))
    if np.any(~zero):
        mean = np.sqrt(2.0 * omega2) / value[~zero]
        tau2[~zero] = 1.0 / rng.wald(mean, 2.0 * omega2)
    atom.tau2 = np.maximum(tau2, VARIANCE_FLOOR)


def mgp_increment_posterior(
    atom: CovarianceAtom, m: int, hyper: Hyperparameters
) -> tuple[float, float]:
    """Shape and rate of the gamma conditional of delta_m (0-based m).

    Returns:
        Tuple of (shape, rate)
    """
    L, K = atom.L, atom.K  # noqa: N806
    column_mass = np.sum(atom.phi * atom.Lambda**2, axis=0)
    xi_without = atom.xi / atom.delta[m]
    base = hyper.mgp.a1 if m == 0 else hyper.mgp.a2
    shape = base + L * (K - m) / 2.0
    rate = 1.0 + 0.5 * atom.e * float(np.sum(xi_without[m:] * column_mass[m:]))
    return shape, rate


def step_update_hyperlatents(
    state: MixtureState, hyper: Hyperparameters, rng: np.random.Generator
) -> None:
    """Step 8: refresh tau2 of every coefficient atom and phi, delta, e of every covariance atom."""
    for mixture in state.blocks:
        for atom in mixture.atoms:
            tau_update(atom, hyper.omega2, rng)

    for atom in state.covariance.atoms:
        if atom.K == 0:
            continue
        lam2 = atom.Lambda**2
        atom.phi = rng.gamma(2.0, 1.0 / ((3.0 + atom.e * atom.xi[None, :] * lam2) / 2.0))
        for m in range(atom.K):
            shape, rate = mgp_increment_posterior(atom, m, hyper)
            atom.delta[m] = rng.gamma(shape, 1.0 / rate)
        mass = float(np.sum(atom.xi * np.sum(atom.phi * lam2, axis=0)))
        shape = hyper.mgp.a_e + atom.L * atom.K / 2.0
        atom.e = float(rng.gamma(shape, 1.0 / (hyper.mgp.b_e + mass / 2.0)))


def collect_unused_sticks(state: MixtureState) -> int:
    """Drop unoccupied sticks after the last occupied one in every family.

    Returns:
        Number of sticks removed
    """
    removed = 0
    for _, mixture in _families(state):
        last = int(np.max(mixture.labels))
        extra = mixture.n_atoms - last - 1
        if extra > 0:
            mixture.nu = mixture.nu[: last + 1]
            del mixture.atoms[last + 1 :]
            removed += extra
    return removed
