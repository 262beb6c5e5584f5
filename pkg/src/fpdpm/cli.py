"""Typer CLI definition for fpdpm."""

import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import NoReturn

import typer

from .config import DEFAULT_CONFIG, FpdpmConfig, load_config, render_config
from .errors import (
    ConfigurationError,
    DegenerateInputError,
    DimensionError,
    NumericError,
    ParameterError,
    StructureError,
)

app = typer.Typer(help="Local clustering of image-valued functional data")

EXIT_USAGE = 2
EXIT_NUMERIC = 3

_USAGE_ERRORS = (
    ConfigurationError,
    DimensionError,
    ParameterError,
    StructureError,
    DegenerateInputError,
)

CONFIG_OPTION = typer.Option(None, "--config", "-c", help="TOML configuration file")
DEBUG_OPTION = typer.Option(False, "--debug", help="Enable debug logging")
SEED_OPTION = typer.Option(None, "--seed", help="Random seed (overrides config and FPDPM_SEED)")


def _setup_logging(debug: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        force=True,
    )


def _fail(e: Exception, what: str, debug: bool) -> NoReturn:
    """Report an exception and exit with the matching code."""
    if isinstance(e, NumericError):
        where = f" at sweep {e.iteration}" if e.iteration is not None else ""
        where += f", block {e.block}" if e.block else ""
        typer.echo(f"Error: numeric failure{where}: {e}", err=True)
        if e.diagnostic:
            typer.echo(json.dumps(e.diagnostic, indent=2, default=str), err=True)
        code = EXIT_NUMERIC
    else:
        code = EXIT_USAGE if isinstance(e, _USAGE_ERRORS) else 1
        if debug:
            typer.echo(f"Debug - {what} failed: {e!r}", err=True)
        else:
            typer.echo(f"Error: {e}", err=True)
    raise typer.Exit(code) from None


def _load(path: Path | None) -> FpdpmConfig:
    return load_config(path)


@app.command()
def simulate(
    config: Path | None = CONFIG_OPTION,
    seed: int | None = SEED_OPTION,
    out_dir: Path = typer.Option(Path("simulated"), "--out-dir", "-o", help="Output directory"),
    binary: bool = typer.Option(False, "--binary", help="Write matrices as raw float64"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Generate a simulated dataset with its ground truth."""
    _setup_logging(debug)
    from .core import cmd_simulate

    try:
        settings = _load(config)
        if seed is not None:
            scenario = replace(settings.simulation.scenario, seed=seed)
            settings = replace(settings, simulation=replace(settings.simulation, scenario=scenario))
        result = cmd_simulate(settings, out_dir, binary=binary)
    except Exception as e:
        _fail(e, "Simulation", debug)
    snr = result.report["snr_db"]
    snr_text = "n/a" if snr is None else f"{snr:.2f} dB"
    typer.echo(f"Wrote {len(result.files)} files to {out_dir} (SNR {snr_text})")


@app.command()
def fit(
    data: Path = typer.Argument(..., help="Observed matrix (.csv or .bin)"),
    config: Path | None = CONFIG_OPTION,
    seed: int | None = SEED_OPTION,
    chains: int | None = typer.Option(None, "--chains", min=1, help="Independent chains"),
    method: str | None = typer.Option(
        None, "--method", "-m", help="fpdpm, fpdpm-independent, dpm, pca-km or lpp-timing"
    ),
    pad: bool | None = typer.Option(
        None, "--pad/--no-pad", help="Zero-pad non-dyadic images to a dyadic grid"
    ),
    threads: int | None = typer.Option(
        None, "--threads", min=1, help="Worker processes (overrides FPDPM_THREADS)"
    ),
    out_dir: Path = typer.Option(Path("fit"), "--out-dir", "-o", help="Output directory"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Run a clustering method on a data file and write its traces."""
    _setup_logging(debug)
    from .core import cmd_fit

    try:
        settings = _load(config)
        chain = settings.chain
        overrides = {"seed": seed, "chains": chains, "method": method, "threads": threads}
        chain = replace(chain, **{k: v for k, v in overrides.items() if v is not None})
        model = settings.model if pad is None else replace(settings.model, pad=pad)
        result = cmd_fit(replace(settings, chain=chain, model=model), data, out_dir)
    except Exception as e:
        _fail(e, "Fit", debug)
    typer.echo(f"{result.report['method']}: wrote {len(result.files)} files to {out_dir}")


@app.command()
def summarize(
    traces: list[Path] = typer.Argument(..., help="Trace files (.npz)"),
    truth: Path | None = typer.Option(
        None, "--truth", help="Directory written by 'fpdpm simulate'"
    ),
    k: int | None = typer.Option(None, "--k", min=0, help="Clusters to cut the tree at"),
    config: Path | None = CONFIG_OPTION,
    out_dir: Path = typer.Option(Path("summary"), "--out-dir", "-o", help="Output directory"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Consolidate memberships and report clustering metrics."""
    _setup_logging(debug)
    from .core import cmd_summarize

    try:
        result = cmd_summarize(_load(config), traces, out_dir, truth_dir=truth, k=k)
    except Exception as e:
        _fail(e, "Summary", debug)
    report = result.report
    typer.echo(f"k = {report['k']}, silhouette = {report['silhouette']}")
    if "ari_global" in report:
        typer.echo(f"ARI (global) = {report['ari_global']:.4f}")
    if "ari_per_level" in report:
        levels = ", ".join(f"{v:.4f}" for v in report["ari_per_level"])
        typer.echo(f"ARI per level = [{levels}]")
    if "mse" in report:
        typer.echo(f"MSE = {report['mse']:.6g}")


@app.command()
def diagnose(
    traces: list[Path] = typer.Argument(..., help="Trace files of two or more chains"),
    threshold: float | None = typer.Option(
        None, "--threshold", help="Gelman-Rubin convergence threshold"
    ),
    config: Path | None = CONFIG_OPTION,
    out_dir: Path = typer.Option(Path("diagnostics"), "--out-dir", "-o", help="Output directory"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Gelman-Rubin statistics over posterior mean functions."""
    _setup_logging(debug)
    from .core import cmd_diagnose

    try:
        result = cmd_diagnose(_load(config), traces, out_dir, threshold=threshold)
    except Exception as e:
        _fail(e, "Diagnosis", debug)
    report = result.report
    typer.echo(
        f"{report['fraction_converged']:.1%} of {report['n_entries']} entries "
        f"below {report['threshold']}"
    )


@app.command()
def benchmark(
    sizes: list[int] | None = typer.Option(
        None, "--size", "-s", help="Grid side (repeatable); L = side * side"
    ),
    iters: int | None = typer.Option(None, "--iters", min=1, help="Sweeps per run"),
    seed: int | None = SEED_OPTION,
    config: Path | None = CONFIG_OPTION,
    out_dir: Path = typer.Option(Path("benchmark"), "--out-dir", "-o", help="Output directory"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Compare per-sweep time of fpdpm and the per-coefficient surrogate."""
    _setup_logging(debug)
    from .core import cmd_benchmark

    try:
        settings = _load(config)
        if seed is not None:
            settings = replace(settings, benchmark=replace(settings.benchmark, seed=seed))
        result = cmd_benchmark(
            settings, out_dir, sizes=tuple(sizes) if sizes else None, iters=iters
        )
    except Exception as e:
        _fail(e, "Benchmark", debug)
    for row in result.report["rows"]:
        typer.echo(f"{row['method']:<12} L={row['L']:<6} {row['mean_sweep_seconds']:.6f}s/sweep")
    for method, slope in result.report["slopes"].items():
        if slope is not None:
            typer.echo(f"slope({method}) = {slope:.3f}")


@app.command()
def replicate(
    replicates: int | None = typer.Option(
        None, "--replicates", "-r", min=1, help="Simulated datasets to fit"
    ),
    methods: list[str] | None = typer.Option(
        None, "--method", "-m", help="Method to compare (repeatable)"
    ),
    k_values: list[int] | None = typer.Option(
        None, "--k-init", help="Initial factor count for fpdpm (repeatable)"
    ),
    seed: int | None = SEED_OPTION,
    threads: int | None = typer.Option(
        None, "--threads", min=1, help="Worker processes (overrides FPDPM_THREADS)"
    ),
    config: Path | None = CONFIG_OPTION,
    out_dir: Path = typer.Option(Path("replicates"), "--out-dir", "-o", help="Output directory"),
    debug: bool = DEBUG_OPTION,
) -> None:
    """Fit every method to repeated simulated datasets and tabulate ARI and MSE."""
    _setup_logging(debug)
    from .core import cmd_replicate

    try:
        settings = _load(config)
        section = settings.replicate
        if methods:
            section = replace(section, methods=tuple(methods))
        if k_values:
            section = replace(section, k_values=tuple(k_values))
        settings = replace(settings, replicate=section)
        if seed is not None:
            scenario = replace(settings.simulation.scenario, seed=seed)
            settings = replace(settings, simulation=replace(settings.simulation, scenario=scenario))
        if threads is not None:
            settings = replace(settings, chain=replace(settings.chain, threads=threads))
        result = cmd_replicate(settings, out_dir, replicates=replicates)
    except Exception as e:
        _fail(e, "Replication", debug)
    for row in result.report["table"]:
        mse = "n/a" if row["mse_mean"] is None else f"{row['mse_mean']:.4g}"
        typer.echo(
            f"{row['method']:<18} ARI {row['ari_mean']:.3f} ({row['ari_sd']:.3f})  MSE {mse}"
        )


@app.command(name="config", hidden=True)
def show_config(
    config: Path | None = CONFIG_OPTION,
    debug: bool = DEBUG_OPTION,
) -> None:
    """Print the default or effective configuration as TOML."""
    _setup_logging(debug)
    if config is None:
        typer.echo(DEFAULT_CONFIG, nl=False)
        return
    try:
        typer.echo(render_config(_load(config)), nl=False)
    except Exception as e:
        _fail(e, "Configuration", debug)
