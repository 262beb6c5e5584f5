"""Comparison methods: global DPM, PCA + k-means and the per-coefficient timing surrogate."""

from .dpm import fit_global_dpm, fit_lpp_timing_surrogate
from .models import BaselineResult
from .pca_kmeans import KMEANS_RESTARTS, fit_pca_kmeans

__all__ = [
    "KMEANS_RESTARTS",
    "BaselineResult",
    "fit_global_dpm",
    "fit_lpp_timing_surrogate",
    "fit_pca_kmeans",
]
