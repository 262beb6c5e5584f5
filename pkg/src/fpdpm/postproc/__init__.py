"""Posterior summarization: consolidation, agreement metrics and diagnostics."""

from .consolidate import (
    complete_linkage,
    consolidate_clusters,
    pairwise_distance,
    relabel,
    resolution_weights,
)
from .metrics import (
    GELMAN_RUBIN_THRESHOLD,
    adjusted_rand_index,
    fraction_converged,
    gelman_rubin,
    gelman_rubin_entries,
    per_resolution_ari,
    posterior_mean_mse,
    silhouette_width,
)
from .models import DistanceMatrix, MembershipTensor

__all__ = [
    "GELMAN_RUBIN_THRESHOLD",
    "DistanceMatrix",
    "MembershipTensor",
    "adjusted_rand_index",
    "complete_linkage",
    "consolidate_clusters",
    "fraction_converged",
    "gelman_rubin",
    "gelman_rubin_entries",
    "pairwise_distance",
    "per_resolution_ari",
    "posterior_mean_mse",
    "relabel",
    "resolution_weights",
    "silhouette_width",
]
