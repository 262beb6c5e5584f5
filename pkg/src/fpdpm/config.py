"""Configuration management for fpdpm.

Loads configuration from a TOML file (built-in defaults when absent).
Priority chain: CLI flags > env vars > config file > defaults.
"""

import logging
import os
import tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .errors import ConfigurationError
from .model import AdaptSettings, Hyperparameters, MGPPrior, VariancePrior
from .sampler import ChainConfig
from .simgen import ScenarioConfig
from .wavelet import WaveletFamily

logger = logging.getLogger(__name__)

ENV_THREADS = "FPDPM_THREADS"
ENV_SEED = "FPDPM_SEED"

DEFAULT_CONFIG = """\
# fpdpm configuration

[model]
# DP concentration per resolution level (one value, or one per level)
alpha = [1.0]
# DP concentration of the covariance clusters
alpha_sigma = 1.0
# Rate of the exponential prior on the coefficient variances tau^2
omega2 = 1.0
# Initial factors per covariance cluster
k_init = 3
# Fix loadings at zero (fpdpm-independent)
independent_errors = false
# Wavelet family: "haar" or "daubechies4"
family = "haar"
# Zero-pad non-dyadic inputs to the enclosing dyadic grid
pad = false
# Subtract each unit's mean before the transform
center = true

[model.mgp]
a1 = 2.1
a2 = 3.1
a_e = 3.0
b_e = 2.0

[model.variance]
a_s = 2.5
b_s = 3.0

[model.adapt]
b0 = 0.1
b1 = 0.0005
q = 1.0
delta_thresh = 0.1
enabled = true

[chain]
# Method: fpdpm, fpdpm-independent, dpm, pca-km, lpp-timing
method = "fpdpm"
n_iter = 2000
burn_in_fraction = 0.9
seed = 0
thinning = 1
chains = 1
record_means = true
log_every = 100
# Worker processes for independent chains (FPDPM_THREADS overrides)
threads = 1

[simulation]
# Scenario: "global", "local", "spatial"
scenario = "global"
n = 300
dims = [32, 32]
# Error model: "independent", "lowrank", "highrank"
error_model = "independent"
seed = 0

[summary]
# Clusters to cut the consolidated tree at; 0 uses the true count when
# truth is given, otherwise the silhouette-best k
k = 0
gr_threshold = 1.2
k_max = 10

[benchmark]
# Grid sides; 2-D grids of side s have L = s * s points
sizes = [4, 8, 16]
iters = 20
n = 30
seed = 0

[replicate]
# Datasets per scenario; dataset r uses simulation.seed + r and chain.seed + r
replicates = 30
# Methods to compare
methods = ["fpdpm-independent", "fpdpm", "dpm", "pca-km", "lpp-timing"]
# Initial factor counts tried for fpdpm, one table row each (empty uses model.k_init)
k_values = [1, 3, 10]
"""


@dataclass(frozen=True)
class ModelConfig:
    """Prior hyperparameters and data preparation."""

    hyper: Hyperparameters = field(default_factory=Hyperparameters)
    family: WaveletFamily = WaveletFamily.HAAR
    pad: bool = False
    center: bool = True


@dataclass(frozen=True)
class ChainSection:
    """Sampler run settings shared by every chain of a fit."""

    method: str = "fpdpm"
    n_iter: int = 2000
    burn_in_fraction: float = 0.9
    seed: int = 0
    thinning: int = 1
    chains: int = 1
    record_means: bool = True
    log_every: int = 100
    threads: int = 1

    def chain_config(self, chain: int = 0) -> ChainConfig:
        """ChainConfig of the chain-th chain; chains use consecutive seeds."""
        return ChainConfig(
            n_iter=self.n_iter,
            burn_in_fraction=self.burn_in_fraction,
            seed=self.seed + chain,
            thinning=self.thinning,
            record_means=self.record_means,
            log_every=self.log_every,
        )


@dataclass(frozen=True)
class SimulationSection:
    """Scenario generation settings."""

    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)


@dataclass(frozen=True)
class SummarySection:
    """Posterior summary settings."""

    k: int = 0
    gr_threshold: float = 1.2
    k_max: int = 10


@dataclass(frozen=True)
class BenchmarkSection:
    """Timing comparison settings."""

    sizes: tuple[int, ...] = (4, 8, 16)
    iters: int = 20
    n: int = 30
    seed: int = 0


@dataclass(frozen=True)
class ReplicateSection:
    """Settings of the repeated simulation study."""

    replicates: int = 30
    methods: tuple[str, ...] = ("fpdpm-independent", "fpdpm", "dpm", "pca-km", "lpp-timing")
    k_values: tuple[int, ...] = (1, 3, 10)

    def __post_init__(self) -> None:
        """Validate the study size and method list."""
        if self.replicates < 1:
            raise ConfigurationError(
                f"replicates must be >= 1, got {self.replicates}", field="replicates"
            )
        if not self.methods:
            raise ConfigurationError("At least one method is required", field="methods")
        if any(k < 1 for k in self.k_values):
            raise ConfigurationError(
                f"k_values must be >= 1, got {list(self.k_values)}", field="k_values"
            )


@dataclass(frozen=True)
class FpdpmConfig:
    """Top-level fpdpm configuration."""

    model: ModelConfig = field(default_factory=ModelConfig)
    chain: ChainSection = field(default_factory=ChainSection)
    simulation: SimulationSection = field(default_factory=SimulationSection)
    summary: SummarySection = field(default_factory=SummarySection)
    benchmark: BenchmarkSection = field(default_factory=BenchmarkSection)
    replicate: ReplicateSection = field(default_factory=ReplicateSection)


_cached_config: FpdpmConfig | None = None

_SECTIONS = {
    "": {"model", "chain", "simulation", "summary", "benchmark", "replicate"},
    "model": {
        "alpha", "alpha_sigma", "omega2", "k_init", "k_max", "independent_errors",
        "family", "pad", "center", "mgp", "variance", "adapt",
    },
    "model.mgp": {"a1", "a2", "a_e", "b_e"},
    "model.variance": {"a_s", "b_s"},
    "model.adapt": {"b0", "b1", "q", "delta_thresh", "enabled"},
    "chain": {
        "method", "n_iter", "burn_in_fraction", "seed", "thinning", "chains",
        "record_means", "log_every", "threads",
    },
    "simulation": {"scenario", "n", "dims", "error_model", "seed", "sigma_lambda"},
    "summary": {"k", "gr_threshold", "k_max"},
    "benchmark": {"sizes", "iters", "n", "seed"},
    "replicate": {"replicates", "methods", "k_values"},
}  # fmt: skip


def _check_keys(table: dict[str, Any], section: str) -> None:
    unknown = set(table) - _SECTIONS[section]
    if unknown:
        key = sorted(unknown)[0]
        name = f"{section}.{key}" if section else key
        raise ConfigurationError(f"Unknown configuration key: {name}", field=name)


def _build(section: str, factory: Any, **kwargs: Any) -> Any:
    try:
        return factory(**kwargs)
    except ConfigurationError as e:
        name = f"{section}.{e.field}" if e.field else section
        raise ConfigurationError(f"Invalid {name}: {e}", field=name, original_error=e) from e
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid [{section}] section: {e}", field=section, original_error=e) from e


def parse_config(data: dict[str, Any]) -> FpdpmConfig:
    """Build an FpdpmConfig from parsed TOML, filling in defaults.

    Raises:
        ConfigurationError: On unknown keys or invalid values; ``field``
            names the offending key
    """
    _check_keys(data, "")
    model = data.get("model", {})
    _check_keys(model, "model")
    mgp = model.get("mgp", {})
    variance = model.get("variance", {})
    adapt = model.get("adapt", {})
    _check_keys(mgp, "model.mgp")
    _check_keys(variance, "model.variance")
    _check_keys(adapt, "model.adapt")

    scalars = {k: v for k, v in model.items() if k not in {"mgp", "variance", "adapt", "family", "pad", "center"}}
    if "alpha" in scalars:
        alpha = scalars["alpha"]
        scalars["alpha"] = tuple(alpha) if isinstance(alpha, list) else (alpha,)
    hyper = _build(
        "model",
        Hyperparameters,
        mgp=_build("model.mgp", MGPPrior, **mgp),
        inv_gamma=_build("model.variance", VariancePrior, **variance),
        adapt=_build("model.adapt", AdaptSettings, **adapt),
        **scalars,
    )
    try:
        family = WaveletFamily(model.get("family", "haar"))
    except ValueError as e:
        raise ConfigurationError(
            f"Unknown wavelet family {model.get('family')!r}", field="model.family"
        ) from e
    model_config = ModelConfig(
        hyper=hyper,
        family=family,
        pad=bool(model.get("pad", False)),
        center=bool(model.get("center", True)),
    )

    chain = data.get("chain", {})
    _check_keys(chain, "chain")
    chain_section = _build("chain", ChainSection, **chain)
    _build("chain", chain_section.chain_config)
    if chain_section.chains < 1 or chain_section.threads < 1:
        raise ConfigurationError("chain.chains and chain.threads must be >= 1", field="chain.chains")

    simulation = dict(data.get("simulation", {}))
    _check_keys(simulation, "simulation")
    if "dims" in simulation:
        simulation["dims"] = tuple(simulation["dims"])
    scenario = _build("simulation", ScenarioConfig, **simulation)

    summary = data.get("summary", {})
    _check_keys(summary, "summary")
    benchmark = dict(data.get("benchmark", {}))
    _check_keys(benchmark, "benchmark")
    if "sizes" in benchmark:
        benchmark["sizes"] = tuple(benchmark["sizes"])
    replicate = dict(data.get("replicate", {}))
    _check_keys(replicate, "replicate")
    for key in ("methods", "k_values"):
        if key in replicate:
            replicate[key] = tuple(replicate[key])

    return FpdpmConfig(
        model=model_config,
        chain=chain_section,
        simulation=SimulationSection(scenario=scenario),
        summary=_build("summary", SummarySection, **summary),
        benchmark=_build("benchmark", BenchmarkSection, **benchmark),
        replicate=_build("replicate", ReplicateSection, **replicate),
    )


def _apply_env(config: FpdpmConfig) -> FpdpmConfig:
    chain = config.chain
    try:
        if threads := os.getenv(ENV_THREADS):
            chain = replace(chain, threads=max(1, int(threads)))
        if seed := os.getenv(ENV_SEED):
            chain = replace(chain, seed=int(seed))
    except ValueError as e:
        raise ConfigurationError(
            f"{ENV_THREADS} and {ENV_SEED} must be integers", field="env", original_error=e
        ) from e
    return replace(config, chain=chain)


def load_config(path: Path | None = None) -> FpdpmConfig:
    """Load configuration from a TOML file with env var overrides.

    Without a path the built-in defaults are used and the result is cached.

    Args:
        path: Config file; None for the defaults

    Returns:
        Loaded and validated FpdpmConfig

    Raises:
        ConfigurationError: If the file is missing, unparseable or invalid
    """
    global _cached_config
    if path is None:
        if _cached_config is None:
            _cached_config = parse_config(tomllib.loads(DEFAULT_CONFIG))
        return _apply_env(_cached_config)

    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}", field="config")
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"Cannot parse {path}: {e}", field="config", original_error=e) from e
    logger.debug(f"Loaded configuration from {path}")
    return _apply_env(parse_config(data))


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    return repr(value)


def _table(name: str, values: dict[str, Any]) -> list[str]:
    lines = [f"[{name}]"]
    lines += [f"{k} = {_toml_value(v)}" for k, v in values.items() if v is not None]
    return [*lines, ""]


def render_config(config: FpdpmConfig) -> str:
    """TOML text that parses back to an identical configuration."""
    hyper = config.model.hyper
    scenario = config.simulation.scenario
    lines = _table(
        "model",
        {
            "alpha": list(hyper.alpha),
            "alpha_sigma": hyper.alpha_sigma,
            "omega2": hyper.omega2,
            "k_init": hyper.k_init,
            "k_max": hyper.k_max,
            "independent_errors": hyper.independent_errors,
            "family": str(config.model.family),
            "pad": config.model.pad,
            "center": config.model.center,
        },
    )
    lines += _table("model.mgp", vars(hyper.mgp))
    lines += _table("model.variance", vars(hyper.inv_gamma))
    lines += _table("model.adapt", vars(hyper.adapt))
    lines += _table("chain", vars(config.chain))
    lines += _table(
        "simulation",
        {
            "scenario": str(scenario.scenario),
            "n": scenario.n,
            "dims": list(scenario.dims),
            "error_model": str(scenario.error_model),
            "seed": scenario.seed,
            "sigma_lambda": scenario.sigma_lambda,
        },
    )
    lines += _table("summary", vars(config.summary))
    lines += _table("benchmark", {**vars(config.benchmark), "sizes": list(config.benchmark.sizes)})
    replicate = config.replicate
    lines += _table(
        "replicate",
        {
            "replicates": replicate.replicates,
            "methods": list(replicate.methods),
            "k_values": list(replicate.k_values),
        },
    )
    return "\n".join(lines)
