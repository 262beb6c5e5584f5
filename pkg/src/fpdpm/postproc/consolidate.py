"""Membership consolidation: weighted pairwise distance and complete linkage."""

import logging
from typing import Literal

import numpy as np

from ..errors import ParameterError
from .metrics import silhouette_width
from .models import DistanceMatrix, MembershipTensor

logger = logging.getLogger(__name__)


def resolution_weights(n_levels: int, n_units: int) -> np.ndarray:
    """Level weights: w_0 = 2, w_j = 1/j if 2^j < n else 1/(2j)."""
    weights = np.empty(n_levels)
    weights[0] = 2.0
    for j in range(1, n_levels):
        weights[j] = 1.0 / j if 2**j < n_units else 1.0 / (2 * j)
    return weights


def pairwise_distance(
    mt: MembershipTensor, n_units_for_weights: int | None = None
) -> DistanceMatrix:
    """Average weighted disagreement of resolution memberships between units.

    Args:
        mt: Retained memberships
        n_units_for_weights: Sample size used by the weight rule (defaults to
            the number of units)
    """
    n = n_units_for_weights or mt.n_units
    weights = resolution_weights(mt.n_levels, n)
    total = np.zeros((mt.n_units, mt.n_units))
    for j, w in enumerate(weights):
        level = mt.labels[:, :, j]
        disagree = level[:, :, None] != level[:, None, :]
        total += w * disagree.mean(axis=0)
    values = total / weights.sum()
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(np.clip(values, 0.0, 1.0))


def complete_linkage(dm: DistanceMatrix) -> np.ndarray:
    """Complete-linkage merge history in SciPy linkage-matrix format.

    Among equally close pairs the one whose smallest member indices are
    lowest (row-major) merges first.

    Returns:
        (n-1) x 4 array of [cluster a, cluster b, height, size]
    """
    n = dm.n
    dist = dm.values.copy()
    np.fill_diagonal(dist, np.inf)
    ids = np.arange(n)
    sizes = np.ones(n, dtype=np.int64)
    Z = np.zeros((max(n - 1, 0), 4))  # noqa: N806

    for m in range(n - 1):
        flat = int(np.argmin(dist))
        a, b = divmod(flat, n)
        a, b = min(a, b), max(a, b)
        height = dist[a, b]
        Z[m] = [min(ids[a], ids[b]), max(ids[a], ids[b]), height, sizes[a] + sizes[b]]
        merged = np.maximum(dist[a], dist[b])
        dist[a, :] = merged
        dist[:, a] = merged
        dist[a, a] = np.inf
        dist[b, :] = np.inf
        dist[:, b] = np.inf
        ids[a] = n + m
        sizes[a] += sizes[b]
    return Z


def relabel(labels: np.ndarray) -> np.ndarray:
    """Canonical 1-based labels numbered by first appearance."""
    labels = np.asarray(labels)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse.reshape(-1)] + 1


def consolidate_clusters(
    dm: DistanceMatrix,
    k: int | Literal["auto"],
    k_range: range | None = None,
) -> np.ndarray:
    """Cut the complete-linkage tree into k clusters.

    Args:
        dm: Pairwise distances
        k: Number of clusters, or "auto" to maximize the silhouette width
        k_range: Candidate k values for "auto" (defaults to 2..min(n-1, 10))

    Returns:
        1-based labels numbered by first appearance

    Raises:
        ParameterError: If k is outside [1, n]
    """
    n = dm.n
    Z = complete_linkage(dm)  # noqa: N806
    if k == "auto":
        candidates = k_range or range(2, min(n - 1, 10) + 1)
        scores = {c: silhouette_width(dm, _cut(Z, n, c)) for c in candidates if 2 <= c < n}
        if not scores:
            raise ParameterError(f"No valid k in {list(candidates)} for n={n}")
        k = max(scores, key=lambda c: (scores[c], -c))
        logger.debug(f"Silhouette widths by k: {scores}; chose k={k}")
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1, {n}], got {k}")
    return _cut(Z, n, k)


def _cut(Z: np.ndarray, n: int, k: int) -> np.ndarray:  # noqa: N803
    """Replay the first n - k merges so exactly k clusters remain."""
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    for m in range(n - k):
        a, b = int(Z[m, 0]), int(Z[m, 1])
        members[n + m] = members.pop(a) + members.pop(b)
    labels = np.empty(n, dtype=np.int64)
    for c, units in enumerate(members.values()):
        labels[units] = c
    return relabel(labels)
