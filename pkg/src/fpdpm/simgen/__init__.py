"""Simulation scenarios, error models and signal-to-noise summaries."""

from .generators import (
    circle_masks,
    gen_errors,
    gen_scenario_global,
    gen_scenario_local,
    gen_scenario_spatial,
    generate,
    snr,
)
from .models import (
    CIRCLE_CENTERS,
    ERROR_VARIANCES,
    LOCAL_LEVEL_PARAMS,
    ErrorModel,
    GeneratedDataset,
    Scenario,
    ScenarioConfig,
)

__all__ = [
    "CIRCLE_CENTERS",
    "ERROR_VARIANCES",
    "LOCAL_LEVEL_PARAMS",
    "ErrorModel",
    "GeneratedDataset",
    "Scenario",
    "ScenarioConfig",
    "circle_masks",
    "gen_errors",
    "gen_scenario_global",
    "gen_scenario_local",
    "gen_scenario_spatial",
    "generate",
    "snr",
]
