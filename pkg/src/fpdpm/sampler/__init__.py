"""Slice-sampled Gibbs sampler for fPDPM."""

from .chain import initialize_state, run_chain, sweep
from .models import ChainConfig, SweepData
from .steps import (
    adapt_factor_count,
    coefficient_conditional,
    collect_unused_sticks,
    extend_sticks,
    factor_conditional,
    loading_conditional,
    membership_probabilities,
    mgp_increment_posterior,
    step_slice_aux,
    step_update_coefficients,
    step_update_factors,
    step_update_hyperlatents,
    step_update_loadings,
    step_update_memberships,
    step_update_variance,
    step_update_weights,
    tau_update,
    truncated_stick_draw,
    variance_conditional,
)

__all__ = [
    "ChainConfig",
    "SweepData",
    "adapt_factor_count",
    "coefficient_conditional",
    "collect_unused_sticks",
    "extend_sticks",
    "factor_conditional",
    "initialize_state",
    "loading_conditional",
    "membership_probabilities",
    "mgp_increment_posterior",
    "run_chain",
    "step_slice_aux",
    "step_update_coefficients",
    "step_update_factors",
    "step_update_hyperlatents",
    "step_update_loadings",
    "step_update_memberships",
    "step_update_variance",
    "step_update_weights",
    "sweep",
    "tau_update",
    "truncated_stick_draw",
    "variance_conditional",
]
