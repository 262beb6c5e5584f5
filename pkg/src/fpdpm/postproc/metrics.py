"""Clustering agreement, fit quality and convergence metrics."""

import logging

import numpy as np
from sklearn.metrics import adjusted_rand_score, silhouette_score

from ..errors import DegenerateInputError, ParameterError
from ..model import Trace
from .models import DistanceMatrix

logger = logging.getLogger(__name__)

GELMAN_RUBIN_THRESHOLD = 1.2


def adjusted_rand_index(labels_a: np.ndarray, labels_b: np.ndarray) -> float:
    """Pair-counting ARI of two partitions of the same units.

    Raises:
        ParameterError: If the lengths differ or fewer than two units are given
    """
    a = np.asarray(labels_a).reshape(-1)
    b = np.asarray(labels_b).reshape(-1)
    if a.shape != b.shape:
        raise ParameterError(f"Label lengths differ: {a.size} vs {b.size}")
    if a.size < 2:
        raise ParameterError("ARI needs at least two units")
    return float(adjusted_rand_score(a, b))


def per_resolution_ari(labels: np.ndarray, truth: np.ndarray) -> list[float]:
    """ARI of each truth column against labels.

    Args:
        labels: (n,) global labelling or (n, levels) local labelling
        truth: (n, levels) true local labels

    Raises:
        ParameterError: If the shapes are incompatible
    """
    truth = np.asarray(truth)
    if truth.ndim == 1:
        truth = truth[:, None]
    labels = np.asarray(labels)
    if labels.ndim == 1:
        labels = np.repeat(labels[:, None], truth.shape[1], axis=1)
    if labels.shape[0] != truth.shape[0] or labels.shape[1] < truth.shape[1]:
        raise ParameterError(f"Labels {labels.shape} do not cover truth {truth.shape}")
    return [adjusted_rand_index(labels[:, j], truth[:, j]) for j in range(truth.shape[1])]


def silhouette_width(dm: DistanceMatrix, labels: np.ndarray) -> float:
    """Mean silhouette over units under precomputed distances; singletons score 0.

    Raises:
        DegenerateInputError: If labels form fewer than two clusters
    """
    labels = np.asarray(labels).reshape(-1)
    if labels.size != dm.n:
        raise ParameterError(f"{labels.size} labels for {dm.n} units")
    n_clusters = np.unique(labels).size
    if n_clusters < 2:
        raise DegenerateInputError("Silhouette width needs at least two clusters")
    if n_clusters == dm.n:
        return 0.0
    return float(silhouette_score(dm.values, labels, metric="precomputed"))


def posterior_mean_mse(
    trace: Trace, truth: np.ndarray
) -> tuple[np.ndarray, float]:
    """Average recorded mean functions and compare them with the truth.

    Args:
        trace: Trace with recorded means
        truth: (n, L) true mean functions on the original support

    Returns:
        Tuple of (theta_hat as (n, L), mean squared error)

    Raises:
        ParameterError: If the trace has no means or the shapes differ
    """
    images = trace.mean_functions()
    theta_hat = images.mean(axis=0).reshape(images.shape[1], -1)
    truth = np.asarray(truth, dtype=float)
    truth = truth.reshape(truth.shape[0], -1)
    if theta_hat.shape != truth.shape:
        raise ParameterError(f"Posterior means {theta_hat.shape} vs truth {truth.shape}")
    mse = float(np.sum((theta_hat - truth) ** 2) / truth.size)
    return theta_hat, mse


def gelman_rubin(chains: np.ndarray) -> float:
    """Potential scale reduction factor of one scalar quantity.

    Args:
        chains: (m chains, N samples)

    Returns:
        sqrt((W (N-1)/N + B/N) / W); inf when only the chains' means differ,
        1 when every chain is constant at the same value

    Raises:
        ParameterError: If fewer than 2 chains or fewer than 10 samples
    """
    return float(gelman_rubin_entries(np.asarray(chains, dtype=float)))


def gelman_rubin_entries(chains: np.ndarray) -> np.ndarray:
    """Elementwise potential scale reduction over trailing axes of (m, N, ...)."""
    chains = np.asarray(chains, dtype=float)
    if chains.ndim < 2 or chains.shape[0] < 2:
        raise ParameterError(f"Need at least two chains, got shape {chains.shape}")
    N = chains.shape[1]  # noqa: N806
    if N < 10:
        raise ParameterError(f"Chains need at least 10 samples, got {N}")
    W = np.mean(np.var(chains, axis=1, ddof=1), axis=0)  # noqa: N806
    B = N * np.var(np.mean(chains, axis=1), axis=0, ddof=1)  # noqa: N806
    pooled = W * (N - 1) / N + B / N
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sqrt(pooled / W)
    out = np.where((W == 0) & (B > 0), np.inf, out)
    return np.where((W == 0) & (B == 0), 1.0, out)


def fraction_converged(values: np.ndarray, threshold: float = GELMAN_RUBIN_THRESHOLD) -> float:
    """Share of Gelman-Rubin statistics strictly below the threshold."""
    values = np.asarray(values, dtype=float).reshape(-1)
    return float(np.mean(values < threshold)) if values.size else 0.0
