"""fPDPM probability model: types, densities and base measures."""

from .density import (
    LowRankGaussian,
    compose_mean,
    compose_means,
    log_complete_likelihood,
    lowrank_gaussian_logdensity,
    mean_coefficients,
)
from .models import (
    VARIANCE_FLOOR,
    AdaptSettings,
    CoefficientAtom,
    CoefficientPartition,
    CovarianceAtom,
    FunctionalDataset,
    Hyperparameters,
    MGPPrior,
    MixtureState,
    StickBreakingMixture,
    Trace,
    VariancePrior,
    stick_weights,
)
from .priors import (
    draw_coefficient_atom,
    draw_covariance_atom,
    draw_from_base_measures,
    draw_loading_column,
    draw_mgp_increments,
)

__all__ = [
    "VARIANCE_FLOOR",
    "AdaptSettings",
    "CoefficientAtom",
    "CoefficientPartition",
    "CovarianceAtom",
    "FunctionalDataset",
    "Hyperparameters",
    "LowRankGaussian",
    "MGPPrior",
    "MixtureState",
    "StickBreakingMixture",
    "Trace",
    "VariancePrior",
    "compose_mean",
    "compose_means",
    "draw_coefficient_atom",
    "draw_covariance_atom",
    "draw_from_base_measures",
    "draw_loading_column",
    "draw_mgp_increments",
    "log_complete_likelihood",
    "lowrank_gaussian_logdensity",
    "mean_coefficients",
    "stick_weights",
]
