"""PCA followed by k-means with silhouette selection of k."""

import logging
import time

import numpy as np
from sklearn.cluster import KMeans
from sklearn.decomposition import PCA
from sklearn.metrics import silhouette_score

from ..errors import DegenerateInputError, ParameterError
from ..model import FunctionalDataset
from ..postproc import relabel
from .models import BaselineResult

logger = logging.getLogger(__name__)

KMEANS_RESTARTS = 20


def fit_pca_kmeans(
    data: FunctionalDataset,
    variance_threshold: float = 0.95,
    k_range: range | None = None,
    seed: int = 0,
) -> BaselineResult:
    """Cluster vectorized images in the leading principal-component space.

    Keeps the fewest components explaining variance_threshold of the
    variance, runs k-means (k-means++, 20 restarts) for every candidate k and
    selects the k with the largest mean silhouette width.

    Args:
        data: Dataset to cluster
        variance_threshold: Explained-variance fraction in (0, 1]
        k_range: Candidate cluster counts within [2, n-1] (defaults to 2..min(n-1, 10))
        seed: Seed of the k-means restarts

    Returns:
        BaselineResult with the retained component count and silhouette table

    Raises:
        ParameterError: If n < 3 or k_range leaves [2, n-1]
        DegenerateInputError: If the data have zero variance
    """
    started = time.perf_counter()
    X = data.flat()  # noqa: N806
    n = X.shape[0]
    if n < 3:
        raise ParameterError(f"PCA-KM needs at least 3 units, got {n}")
    k_range = k_range or range(2, min(n - 1, 10) + 1)
    if min(k_range) < 2 or max(k_range) > n - 1:
        raise ParameterError(f"k_range {list(k_range)} must lie within [2, {n - 1}]")
    if np.all(np.var(X, axis=0) == 0):
        raise DegenerateInputError("Data have zero variance; nothing to cluster")

    if variance_threshold >= 1.0:
        pca = PCA(svd_solver="full")
    else:
        pca = PCA(n_components=variance_threshold, svd_solver="full")
    scores = pca.fit_transform(X)
    n_components = int(pca.n_components_)
    logger.debug(f"PCA kept {n_components} component(s) for {variance_threshold:.0%} variance")

    silhouettes: dict[int, float] = {}
    labelings: dict[int, np.ndarray] = {}
    for k in k_range:
        km = KMeans(n_clusters=k, init="k-means++", n_init=KMEANS_RESTARTS, random_state=seed)
        labels = km.fit_predict(scores)
        labelings[k] = labels
        if np.unique(labels).size < 2:
            silhouettes[k] = -1.0
            continue
        silhouettes[k] = float(silhouette_score(scores, labels))

    best = max(silhouettes, key=lambda k: (silhouettes[k], -k))
    memberships = relabel(labelings[best])
    return BaselineResult(
        memberships=memberships,
        n_clusters=int(memberships.max()),
        seconds=time.perf_counter() - started,
        method="pca-km",
        n_components=n_components,
        silhouettes=silhouettes,
    )
