"""Core functionality for fpdpm - orchestrates simulation, fitting and summaries.

Each ``cmd_*`` function backs one CLI subcommand, writes its files through
RunStorage and finishes with a run manifest.
"""

import logging
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Literal

import numpy as np
from joblib import Parallel, delayed

from .config import FpdpmConfig, render_config
from .errors import ConfigurationError, DegenerateInputError, ParameterError
from .methods import FitOutcome, MethodRegistry
from .model import FunctionalDataset, Hyperparameters, Trace
from .postproc import (
    MembershipTensor,
    adjusted_rand_index,
    consolidate_clusters,
    fraction_converged,
    gelman_rubin_entries,
    pairwise_distance,
    per_resolution_ari,
    silhouette_width,
)
from .sampler import ChainConfig
from .simgen import GeneratedDataset, Scenario, ScenarioConfig, generate
from .storage import RunManifest, RunStorage, load_trace, read_labels, read_matrix
from .wavelet import WaveletFamily

logger = logging.getLogger(__name__)

BENCHMARK_METHODS = ("fpdpm", "lpp-timing")


@dataclass
class CommandResult:
    """Files and headline numbers of one command run."""

    out_dir: Path
    manifest: Path
    files: list[Path] = field(default_factory=list)
    report: dict[str, Any] = field(default_factory=dict)


def _finish(
    storage: RunStorage,
    command: str,
    config: FpdpmConfig,
    seeds: list[int],
    wall_times: dict[str, float],
    report: dict[str, Any],
) -> CommandResult:
    manifest = RunManifest(
        command=command, config=render_config(config), seeds=seeds, wall_times=wall_times
    )
    path = storage.write_manifest(manifest)
    return CommandResult(storage.out_dir, path, list(storage.written), report)


def _finite_or_none(value: float) -> float | None:
    return float(value) if np.isfinite(value) else None


def cmd_simulate(config: FpdpmConfig, out_dir: Path, binary: bool = False) -> CommandResult:
    """Generate the configured scenario and write it to out_dir.

    Writes ``observed``, ``truth`` and ``errors`` matrices, ``labels.csv``
    (one column per resolution level), ``global_labels.csv``,
    ``covariance_labels.csv`` and ``snr.json``.

    Args:
        config: Configuration; the [simulation] section is used
        out_dir: Output directory
        binary: Write matrices as raw float64 instead of CSV

    Returns:
        CommandResult with the SNR in its report
    """
    started = time.perf_counter()
    scenario = config.simulation.scenario
    dataset = generate(scenario)
    generated = time.perf_counter()

    storage = RunStorage(out_dir)
    dims = dataset.grid.dims
    storage.write_matrix("observed", dataset.observed, dims, binary=binary)
    storage.write_matrix("truth", dataset.truth, dims, binary=binary)
    storage.write_matrix("errors", dataset.errors, dims, binary=binary)
    storage.write_labels(
        "labels", dataset.labels, [f"level_{j}" for j in range(dataset.labels.shape[1])]
    )
    storage.write_labels("global_labels", dataset.global_labels, ["global"])
    storage.write_labels("covariance_labels", dataset.covariance_labels, ["covariance"])
    report = {
        "scenario": str(scenario.scenario),
        "error_model": str(scenario.error_model),
        "n": dataset.n,
        "dims": list(dims),
        "snr_db": _finite_or_none(dataset.snr),
        "n_global_clusters": int(np.unique(dataset.global_labels).size),
    }
    storage.write_json("snr", report)
    wall = {"generate": generated - started, "write": time.perf_counter() - generated}
    return _finish(storage, "simulate", config, [scenario.seed], wall, report)


def load_dataset(path: Path, pad: bool = False, center: bool = True) -> FunctionalDataset:
    """Read a matrix file into a dyadic dataset.

    Raises:
        DimensionError: If the images are not dyadic and pad is False
    """
    matrix, dims = read_matrix(path)
    return FunctionalDataset.from_matrix(matrix, image_shape=dims, pad=pad, center=center)


def _run_fit(
    method: str,
    data: FunctionalDataset,
    hyper: Hyperparameters,
    chain: ChainConfig,
    family: WaveletFamily,
) -> FitOutcome:
    return MethodRegistry.create(method).fit(data, hyper, chain, family)


def _resolve_method(name: str, field: str = "chain.method") -> str:
    try:
        return MethodRegistry.get(name).name
    except KeyError as e:
        raise ConfigurationError(str(e.args[0]), field=field, original_error=e) from e


def cmd_fit(config: FpdpmConfig, data_path: Path, out_dir: Path) -> CommandResult:
    """Fit the configured method to a data file.

    Sampler-based methods run ``chain.chains`` chains with consecutive seeds,
    fanned out over at most ``chain.threads`` worker processes, and write
    ``trace_<c>.npz`` per chain. Point clusterings go to ``labels_<c>.csv``.
    Per-chain timings go to ``timings.json``.
    The data file may be CSV or raw float64 with its JSON sidecar; the format
    is taken from the file itself.

    Raises:
        ConfigurationError: If the method is unknown
        DimensionError: If the data are not dyadic and padding is off
        NumericError: If a chain produced non-finite values
    """
    method = _resolve_method(config.chain.method)
    started = time.perf_counter()
    data = load_dataset(data_path, pad=config.model.pad, center=config.model.center)
    loaded = time.perf_counter()

    sampler_based = MethodRegistry.get(method).sampler_based
    n_chains = config.chain.chains if sampler_based else 1
    if not sampler_based and config.chain.chains > 1:
        logger.info(f"{method} is deterministic given its seed; running a single fit")
    chains = [config.chain.chain_config(c) for c in range(n_chains)]
    workers = min(config.chain.threads, n_chains)
    logger.info(
        f"Fitting {method} to {data.n} units on {data.grid.dims} with "
        f"{n_chains} chain(s) over {workers} worker(s)"
    )
    jobs = (
        delayed(_run_fit)(method, data, config.model.hyper, chain, config.model.family)
        for chain in chains
    )
    outcomes: list[FitOutcome] = Parallel(n_jobs=workers)(jobs)
    fitted = time.perf_counter()

    storage = RunStorage(out_dir)
    timings: dict[str, Any] = {}
    for c, (chain, outcome) in enumerate(zip(chains, outcomes, strict=True), start=1):
        entry: dict[str, Any] = {"seed": chain.seed}
        if outcome.trace is not None:
            storage.save_trace(f"trace_{c}", outcome.trace)
            sweeps = outcome.trace.sweep_seconds
            entry["mean_sweep_seconds"] = float(np.mean(sweeps)) if sweeps.size else None
            entry["total_sweep_seconds"] = float(np.sum(sweeps))
            entry["n_retained"] = outcome.trace.n_retained
        if outcome.baseline is not None:
            result = outcome.baseline
            storage.write_labels(f"labels_{c}", result.memberships, ["cluster"])
            entry["n_clusters"] = result.n_clusters
            entry["seconds"] = result.seconds
            if result.n_components is not None:
                entry["n_components"] = result.n_components
                entry["silhouettes"] = {str(k): v for k, v in result.silhouettes.items()}
        timings[str(c)] = entry
    report = {
        "method": method,
        "n_units": data.n,
        "dims": list(data.grid.dims),
        "padded": data.padding is not None,
        "chains": timings,
    }
    storage.write_json("timings", report)
    wall = {"load": loaded - started, "fit": fitted - loaded, "write": time.perf_counter() - fitted}
    return _finish(storage, "fit", config, [c.seed for c in chains], wall, report)


def load_traces(paths: list[Path]) -> list[Trace]:
    """Load traces and check that they describe the same units and levels.

    Raises:
        ParameterError: If no paths are given or the traces differ in shape
    """
    if not paths:
        raise ParameterError("At least one trace file is required")
    traces = [load_trace(p) for p in paths]
    first = traces[0]
    for path, trace in zip(paths[1:], traces[1:], strict=True):
        if trace.memberships.shape[1:] != first.memberships.shape[1:] or trace.dims != first.dims:
            raise ParameterError(
                f"{path} has memberships {trace.memberships.shape[1:]} on {trace.dims}, "
                f"expected {first.memberships.shape[1:]} on {first.dims}"
            )
    return traces


def _level_labels(mt: MembershipTensor, level: int, k: int) -> np.ndarray:
    single = MembershipTensor(mt.labels[:, :, level : level + 1])
    return consolidate_clusters(pairwise_distance(single), min(k, mt.n_units))


def _pooled_mse(traces: list[Trace], truth: np.ndarray) -> tuple[np.ndarray, float]:
    weights = np.array([t.n_retained for t in traces], dtype=float)
    theta_hat = sum(
        w * t.mean_functions().mean(axis=0).reshape(t.n_units, -1)
        for w, t in zip(weights, traces, strict=True)
    ) / weights.sum()
    if theta_hat.shape != truth.shape:
        raise ParameterError(f"Posterior means {theta_hat.shape} vs truth {truth.shape}")
    return theta_hat, float(np.mean((theta_hat - truth) ** 2))


def cmd_summarize(
    config: FpdpmConfig,
    trace_paths: list[Path],
    out_dir: Path,
    truth_dir: Path | None = None,
    k: int | None = None,
) -> CommandResult:
    """Consolidate memberships and score them.

    The tree is cut at ``k`` when positive, else at the true number of
    global clusters when ``truth_dir`` holds ``global_labels.csv``, else at
    the silhouette-best k. With truth available, ARI is reported globally,
    per resolution level, and the posterior mean functions are scored by MSE
    against the centered truth.

    Args:
        config: Configuration; the [summary] section is used
        trace_paths: Trace files of one or more chains
        out_dir: Output directory
        truth_dir: Directory written by cmd_simulate
        k: Clusters to cut at; overrides summary.k

    Returns:
        CommandResult with the metrics in its report
    """
    started = time.perf_counter()
    traces = load_traces(trace_paths)
    mt = MembershipTensor.concatenate(traces)
    dm = pairwise_distance(mt)
    distanced = time.perf_counter()

    truth_global = truth_levels = truth_matrix = None
    if truth_dir is not None:
        if (truth_dir / "global_labels.csv").exists():
            truth_global = read_labels(truth_dir / "global_labels.csv")[0][:, 0]
        if (truth_dir / "labels.csv").exists():
            truth_levels = read_labels(truth_dir / "labels.csv")[0]
        for name in ("truth.csv", "truth.bin"):
            if (truth_dir / name).exists():
                truth_matrix = read_matrix(truth_dir / name)[0]
                break
    else:
        logger.info("No truth given; reporting unsupervised metrics only")

    k = config.summary.k if k is None else k
    target: int | Literal["auto"]
    if k > 0:
        target = k
    elif truth_global is not None:
        target = int(np.unique(truth_global).size)
    else:
        target = "auto"
    k_range = range(2, min(mt.n_units - 1, config.summary.k_max) + 1)
    labels = consolidate_clusters(dm, target, k_range)

    report: dict[str, Any] = {
        "n_units": mt.n_units,
        "n_samples": mt.n_samples,
        "n_chains": len(traces),
        "method": traces[0].method,
        "k": int(labels.max()),
    }
    try:
        report["silhouette"] = silhouette_width(dm, labels)
    except DegenerateInputError:
        report["silhouette"] = None

    storage = RunStorage(out_dir)
    storage.write_array("distance", dm.values)
    storage.write_labels("consolidated_labels", labels, ["cluster"])

    if truth_global is not None:
        report["ari_global"] = adjusted_rand_index(labels, truth_global)
    if truth_levels is not None:
        levels = min(truth_levels.shape[1], mt.n_levels)
        report["ari_by_level_consolidated"] = per_resolution_ari(labels, truth_levels[:, :levels])
        level_labels = np.column_stack(
            [
                _level_labels(mt, j, int(np.unique(truth_levels[:, j]).size))
                for j in range(levels)
            ]
        )
        report["ari_per_level"] = per_resolution_ari(level_labels, truth_levels[:, :levels])
        storage.write_labels("level_labels", level_labels, [f"level_{j}" for j in range(levels)])
    if truth_matrix is not None and all(t.means is not None for t in traces):
        centered = truth_matrix - truth_matrix.mean(axis=1, keepdims=True)
        theta_hat, mse = _pooled_mse(traces, centered)
        padding = traces[0].padding
        dims = padding.original_dims if padding is not None else traces[0].dims
        storage.write_matrix("posterior_mean", theta_hat, dims)
        report["mse"] = mse

    storage.write_json("metrics", report)
    lines = [f"{key}: {value}" for key, value in sorted(report.items())]
    storage.write_text("summary.txt", "\n".join(lines) + "\n")
    wall = {"distance": distanced - started, "score": time.perf_counter() - distanced}
    return _finish(storage, "summarize", config, [t.seed for t in traces], wall, report)


def cmd_diagnose(
    config: FpdpmConfig,
    trace_paths: list[Path],
    out_dir: Path,
    threshold: float | None = None,
) -> CommandResult:
    """Gelman-Rubin statistics of every posterior mean-function entry.

    Chains are truncated to the shortest one. Writes ``gelman_rubin`` as a
    matrix of the per-unit, per-pixel statistics and ``diagnostics.json``.

    Raises:
        ParameterError: If fewer than two traces are given or a trace has no
            recorded means
    """
    if len(trace_paths) < 2:
        raise ParameterError("Gelman-Rubin diagnostics need at least two chains")
    started = time.perf_counter()
    traces = load_traces(trace_paths)
    means = [t.mean_functions() for t in traces]
    N = min(m.shape[0] for m in means)  # noqa: N806
    chains = np.stack([m[:N] for m in means])
    values = gelman_rubin_entries(chains.reshape(chains.shape[0], N, traces[0].n_units, -1))
    threshold = config.summary.gr_threshold if threshold is None else threshold

    report = {
        "n_chains": len(traces),
        "n_samples": N,
        "n_entries": int(values.size),
        "threshold": threshold,
        "fraction_converged": fraction_converged(values, threshold),
        "max": _finite_or_none(float(np.max(values))),
        "median": _finite_or_none(float(np.median(values))),
    }
    logger.info(
        f"Gelman-Rubin below {threshold} for {report['fraction_converged']:.1%} of "
        f"{values.size} entries"
    )
    storage = RunStorage(out_dir)
    storage.write_matrix("gelman_rubin", values, tuple(means[0].shape[2:]))
    storage.write_json("diagnostics", report)
    wall = {"diagnose": time.perf_counter() - started}
    return _finish(storage, "diagnose", config, [t.seed for t in traces], wall, report)


def cmd_benchmark(
    config: FpdpmConfig,
    out_dir: Path,
    sizes: tuple[int, ...] | None = None,
    iters: int | None = None,
) -> CommandResult:
    """Per-sweep time of fpdpm and the per-coefficient surrogate across grid sizes.

    Each size s uses a global-scenario dataset on an s x s grid. The
    log-log slope of mean sweep time against L is fitted per method.

    Returns:
        CommandResult whose report holds ``rows`` and ``slopes``
    """
    bench = config.benchmark
    sizes = sizes or bench.sizes
    iters = iters or bench.iters
    chain = ChainConfig(
        n_iter=iters, burn_in_fraction=0.0, seed=bench.seed, record_means=False, log_every=0
    )
    rows: list[dict[str, Any]] = []
    started = time.perf_counter()
    for size in sizes:
        scenario = ScenarioConfig(
            scenario=Scenario.GLOBAL, n=bench.n, dims=(size, size), seed=bench.seed
        )
        data = FunctionalDataset.from_matrix(generate(scenario).images())
        for method in BENCHMARK_METHODS:
            outcome = _run_fit(method, data, config.model.hyper, chain, config.model.family)
            if outcome.trace is None:
                raise ParameterError(f"{method} produced no sweep timings")
            seconds = float(np.mean(outcome.trace.sweep_seconds))
            rows.append({"method": method, "size": size, "L": data.grid.L, "mean_sweep_seconds": seconds})
            logger.info(f"{method} on {size}x{size}: {seconds:.5f}s per sweep")

    slopes: dict[str, float | None] = {}
    for method in BENCHMARK_METHODS:
        points = [(r["L"], r["mean_sweep_seconds"]) for r in rows if r["method"] == method]
        if len(points) < 2:
            slopes[method] = None
            continue
        L, seconds = np.array(points).T  # noqa: N806
        slopes[method] = float(np.polyfit(np.log(L), np.log(np.maximum(seconds, 1e-12)), 1)[0])

    storage = RunStorage(out_dir)
    table = ["method,size,L,mean_sweep_seconds"] + [
        f"{r['method']},{r['size']},{r['L']},{r['mean_sweep_seconds']:.9g}" for r in rows
    ]
    storage.write_text("benchmark.csv", "\n".join(table) + "\n")
    report = {"iters": iters, "n": bench.n, "rows": rows, "slopes": slopes}
    storage.write_json("benchmark", report)
    config = replace(config, benchmark=replace(bench, sizes=tuple(sizes), iters=iters))
    wall = {"benchmark": time.perf_counter() - started}
    return _finish(storage, "benchmark", config, [bench.seed], wall, report)


@dataclass(frozen=True)
class ReplicateVariant:
    """One row of the replicate table: a method with its hyperparameters."""

    label: str
    method: str
    hyper: Hyperparameters


def replicate_variants(config: FpdpmConfig) -> list[ReplicateVariant]:
    """Expand ``replicate.methods`` into table rows.

    fpdpm gets one row per entry of ``replicate.k_values``, labelled
    ``fpdpm-k<K>``; every other method gets a single row.

    Raises:
        ConfigurationError: If a method is unknown or listed twice
    """
    hyper = config.model.hyper
    variants: list[ReplicateVariant] = []
    for name in config.replicate.methods:
        method = _resolve_method(name, field="replicate.methods")
        if method == "fpdpm" and config.replicate.k_values:
            variants += [
                ReplicateVariant(f"fpdpm-k{k}", method, replace(hyper, k_init=k))
                for k in config.replicate.k_values
            ]
        else:
            variants.append(ReplicateVariant(method, method, hyper))
    labels = [v.label for v in variants]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f"Duplicate methods in {labels}", field="replicate.methods")
    return variants


def score_outcome(outcome: FitOutcome, dataset: GeneratedDataset) -> dict[str, Any]:
    """Global ARI, per-level ARI and MSE of one fit against its simulated truth.

    Sampler traces are consolidated at the true number of global clusters;
    level-specific methods are also cut per level at that level's true
    cluster count. Methods without level-specific memberships score their
    global clustering against every level. MSE is None without recorded means.
    """
    truth_levels = dataset.labels
    k_true = int(np.unique(dataset.global_labels).size)
    scores: dict[str, Any] = {"mse": None}
    trace = outcome.trace
    if trace is not None:
        mt = MembershipTensor.from_trace(trace)
        labels = consolidate_clusters(pairwise_distance(mt), min(k_true, mt.n_units))
    elif outcome.baseline is not None:
        labels = outcome.baseline.memberships
    else:
        raise ParameterError(f"{outcome.method} returned neither a trace nor a clustering")
    scores["ari_global"] = adjusted_rand_index(labels, dataset.global_labels)

    if trace is not None and MethodRegistry.get(outcome.method).level_specific:
        levels = min(truth_levels.shape[1], mt.n_levels)
        level_labels = np.column_stack(
            [
                _level_labels(mt, j, int(np.unique(truth_levels[:, j]).size))
                for j in range(levels)
            ]
        )
        scores["ari_per_level"] = per_resolution_ari(level_labels, truth_levels[:, :levels])
    else:
        scores["ari_per_level"] = per_resolution_ari(labels, truth_levels)

    if trace is not None and trace.means is not None:
        centered = dataset.truth - dataset.truth.mean(axis=1, keepdims=True)
        scores["mse"] = _pooled_mse([trace], centered)[1]
    return scores


def _mean_sd(values: list[float]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    array = np.asarray(values, dtype=float)
    sd = float(array.std(ddof=1)) if array.size > 1 else 0.0
    return float(array.mean()), sd


def _csv_value(value: float | None) -> str:
    return "" if value is None else f"{value:.6g}"


def cmd_replicate(
    config: FpdpmConfig,
    out_dir: Path,
    replicates: int | None = None,
) -> CommandResult:
    """Repeat the configured scenario and compare every method on each copy.

    Dataset r (0-based) uses ``simulation.seed + r`` and every chain on it
    uses ``chain.seed + r``. Fits are fanned out over ``chain.threads``
    worker processes. Writes one row per fit to ``replicates.csv``, the mean
    and standard deviation of ARI and MSE per method to ``table.csv``, and
    both to ``replicate.json``.

    Args:
        config: Configuration; the [simulation], [chain] and [replicate]
            sections are used
        out_dir: Output directory
        replicates: Number of datasets; overrides replicate.replicates

    Returns:
        CommandResult whose report holds ``rows`` and ``table``

    Raises:
        ConfigurationError: If a listed method is unknown
        ParameterError: If replicates is below 1
    """
    replicates = config.replicate.replicates if replicates is None else replicates
    if replicates < 1:
        raise ParameterError(f"replicates must be >= 1, got {replicates}")
    variants = replicate_variants(config)
    base = config.simulation.scenario

    started = time.perf_counter()
    datasets = [generate(replace(base, seed=base.seed + r)) for r in range(replicates)]
    inputs = [
        FunctionalDataset.from_matrix(d.images(), center=config.model.center) for d in datasets
    ]
    generated = time.perf_counter()

    work = [(r, variant) for r in range(replicates) for variant in variants]
    logger.info(
        f"Running {len(variants)} method(s) on {replicates} {base.scenario} dataset(s) "
        f"over {config.chain.threads} worker(s)"
    )
    jobs = (
        delayed(_run_fit)(
            v.method, inputs[r], v.hyper, config.chain.chain_config(r), config.model.family
        )
        for r, v in work
    )
    outcomes: list[FitOutcome] = Parallel(n_jobs=config.chain.threads)(jobs)
    fitted = time.perf_counter()

    rows: list[dict[str, Any]] = []
    for (r, variant), outcome in zip(work, outcomes, strict=True):
        scores = score_outcome(outcome, datasets[r])
        rows.append(
            {"method": variant.label, "replicate": r + 1, "seed": base.seed + r, **scores}
        )
        logger.debug(f"{variant.label} on replicate {r + 1}: ARI {scores['ari_global']:.3f}")

    n_levels = datasets[0].labels.shape[1]
    table: list[dict[str, Any]] = []
    for variant in variants:
        own = [row for row in rows if row["method"] == variant.label]
        ari_mean, ari_sd = _mean_sd([row["ari_global"] for row in own])
        mse_mean, mse_sd = _mean_sd([row["mse"] for row in own if row["mse"] is not None])
        level_means = [
            _mean_sd([row["ari_per_level"][j] for row in own])[0] for j in range(n_levels)
        ]
        table.append(
            {
                "method": variant.label,
                "replicates": len(own),
                "ari_mean": ari_mean,
                "ari_sd": ari_sd,
                "mse_mean": mse_mean,
                "mse_sd": mse_sd,
                "ari_per_level_mean": level_means,
            }
        )
        logger.info(f"{variant.label}: mean ARI {ari_mean:.3f} over {len(own)} replicate(s)")

    level_columns = [f"ari_level_{j}" for j in range(n_levels)]
    storage = RunStorage(out_dir)
    lines = [",".join(["method", "replicate", "seed", "ari_global", "mse", *level_columns])]
    lines += [
        ",".join(
            [
                row["method"],
                str(row["replicate"]),
                str(row["seed"]),
                _csv_value(row["ari_global"]),
                _csv_value(row["mse"]),
                *(_csv_value(v) for v in row["ari_per_level"]),
            ]
        )
        for row in rows
    ]
    storage.write_text("replicates.csv", "\n".join(lines) + "\n")
    summary = [
        ",".join(
            ["method", "replicates", "ari_mean", "ari_sd", "mse_mean", "mse_sd"]
            + [f"{c}_mean" for c in level_columns]
        )
    ]
    summary += [
        ",".join(
            [
                entry["method"],
                str(entry["replicates"]),
                *(_csv_value(entry[key]) for key in ("ari_mean", "ari_sd", "mse_mean", "mse_sd")),
                *(_csv_value(v) for v in entry["ari_per_level_mean"]),
            ]
        )
        for entry in table
    ]
    storage.write_text("table.csv", "\n".join(summary) + "\n")
    report = {
        "scenario": str(base.scenario),
        "error_model": str(base.error_model),
        "replicates": replicates,
        "rows": rows,
        "table": table,
    }
    storage.write_json("replicate", report)
    config = replace(config, replicate=replace(config.replicate, replicates=replicates))
    wall = {
        "generate": generated - started,
        "fit": fitted - generated,
        "score": time.perf_counter() - fitted,
    }
    seeds = [base.seed + r for r in range(replicates)]
    return _finish(storage, "replicate", config, seeds, wall, report)
