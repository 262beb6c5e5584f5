"""Dataset, trace and manifest files of one run directory.

Matrices are written unit-per-row with a ``unit`` column followed by pixel
columns in column-major pixel order (``v_<row>_<col>`` for images,
``v_<index>`` for 1-D signals). The raw binary alternative stores the
(n, *dims) stack as little-endian float64 in C order, with a JSON sidecar
holding the shape.
"""

import hashlib
import json
import logging
import re
from dataclasses import asdict, dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DimensionError, ParameterError
from .model import Trace
from .wavelet import PaddingRecord

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
VERSIONED_PACKAGES = ("fpdpm", "numpy", "scipy", "scikit-learn", "PyWavelets", "typer")

_PIXEL = re.compile(r"^v_(\d+)(?:_(\d+))?$")


def _pixel_names(dims: tuple[int, ...]) -> list[str]:
    if len(dims) == 1:
        return [f"v_{i}" for i in range(dims[0])]
    rows, cols = dims
    return [f"v_{r}_{c}" for c in range(cols) for r in range(rows)]


def _column_major(matrix: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    images = matrix.reshape((matrix.shape[0], *dims))
    if len(dims) == 2:
        images = images.transpose(0, 2, 1)
    return images.reshape(matrix.shape[0], -1)


def _dims_from_header(names: list[str]) -> tuple[int, ...]:
    matches = [_PIXEL.match(name) for name in names]
    if not names or any(m is None for m in matches):
        raise ParameterError(f"Unrecognized pixel columns starting with {names[:3]}")
    if matches[0].group(2) is None:  # type: ignore[union-attr]
        dims: tuple[int, ...] = (len(names),)
    else:
        rows = 1 + max(int(m.group(1)) for m in matches)  # type: ignore[union-attr]
        cols = 1 + max(int(m.group(2)) for m in matches)  # type: ignore[union-attr]
        dims = (rows, cols)
    if _pixel_names(dims) != names:
        raise ParameterError("Pixel columns are not in column-major order")
    return dims


def read_matrix(path: Path) -> tuple[np.ndarray, tuple[int, ...]]:
    """Read a matrix file written by RunStorage.write_matrix.

    Args:
        path: ``.csv`` file, or ``.bin`` file with its ``.json`` sidecar

    Returns:
        Tuple of ((n, L) row-major pixels, image dims)

    Raises:
        ParameterError: If the file is missing or malformed
    """
    if not path.exists():
        raise ParameterError(f"Data file not found: {path}")
    if path.suffix == ".bin":
        sidecar = path.with_suffix(".json")
        try:
            meta = json.loads(sidecar.read_text())
            shape = tuple(int(v) for v in meta["shape"])
        except (OSError, ValueError, KeyError) as e:
            raise ParameterError(f"Cannot read sidecar {sidecar}", e) from e
        values = np.fromfile(path, dtype="<f8")
        if values.size != int(np.prod(shape)):
            raise ParameterError(f"{path} holds {values.size} values, sidecar says {shape}")
        return values.reshape(shape[0], -1), shape[1:]

    with open(path) as f:
        header = f.readline().strip().split(",")
    if not header or header[0] != "unit":
        raise ParameterError(f"{path} does not start with a 'unit' column")
    dims = _dims_from_header(header[1:])
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise ParameterError(f"Cannot parse {path}", e) from e
    if table.shape[1] != len(header):
        raise ParameterError(f"{path} rows have {table.shape[1]} fields, header has {len(header)}")
    values = table[:, 1:]
    if len(dims) == 2:
        values = values.reshape(-1, dims[1], dims[0]).transpose(0, 2, 1)
    return values.reshape(table.shape[0], -1), dims


def read_labels(path: Path) -> tuple[np.ndarray, list[str]]:
    """Read a label CSV.

    Returns:
        Tuple of ((n, columns) integer labels, column names)
    """
    if not path.exists():
        raise ParameterError(f"Label file not found: {path}")
    with open(path) as f:
        header = f.readline().strip().split(",")
    if header[0] != "unit":
        raise ParameterError(f"{path} does not start with a 'unit' column")
    table = np.loadtxt(path, delimiter=",", skiprows=1, dtype=np.int64, ndmin=2)
    return table[:, 1:], header[1:]


def load_trace(path: Path) -> Trace:
    """Load a trace written by RunStorage.save_trace.

    Raises:
        ParameterError: If the file is missing or lacks required arrays
    """
    if not path.exists():
        raise ParameterError(f"Trace file not found: {path}")
    try:
        with np.load(path, allow_pickle=False) as archive:
            arrays = {name: archive[name] for name in archive.files}
    except (OSError, ValueError) as e:
        raise ParameterError(f"Cannot read trace {path}", e) from e
    try:
        dims = tuple(int(v) for v in arrays["dims"])
        padding = None
        if arrays["original_dims"].size:
            padding = PaddingRecord(
                original_dims=tuple(int(v) for v in arrays["original_dims"]),
                offsets=tuple(int(v) for v in arrays["pad_offsets"]),
                padded_dims=dims,
            )
        return Trace(
            memberships=arrays["memberships"],
            block_memberships=arrays["block_memberships"],
            covariance_memberships=arrays["covariance_memberships"],
            factor_counts=arrays["factor_counts"],
            occupied=arrays["occupied"],
            sweep_seconds=arrays["sweep_seconds"],
            seed=int(arrays["seed"]),
            method=str(arrays["method"]),
            dims=dims,
            means=arrays.get("means"),
            offsets=arrays["offsets"],
            padding=padding,
            iterations=arrays["iterations"],
        )
    except KeyError as e:
        raise ParameterError(f"Trace {path} is missing array {e}", e) from e


def sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def package_versions() -> dict[str, str]:
    versions = {}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


@dataclass
class RunManifest:
    """Record of one command run.

    Args:
        command: Subcommand that produced the run
        config: Rendered TOML of the effective configuration
        seeds: Seeds used, one per chain or dataset
        versions: Installed versions of the numeric stack
        wall_times: Seconds spent per phase
        files: Emitted file name (relative to the run directory) to SHA-256
    """

    command: str
    config: str
    seeds: list[int] = field(default_factory=list)
    versions: dict[str, str] = field(default_factory=package_versions)
    wall_times: dict[str, float] = field(default_factory=dict)
    files: dict[str, str] = field(default_factory=dict)

    @classmethod
    def read(cls, path: Path) -> "RunManifest":
        try:
            return cls(**json.loads(path.read_text()))
        except (OSError, ValueError, TypeError) as e:
            raise ParameterError(f"Cannot read manifest {path}", e) from e


def verify_manifest(path: Path) -> list[str]:
    """Recompute checksums of every file a manifest lists.

    Args:
        path: Manifest file; listed names resolve against its directory

    Returns:
        Names of missing files or files whose checksum changed (empty when
        everything verifies)
    """
    manifest = RunManifest.read(path)
    failures = []
    for name, digest in manifest.files.items():
        target = path.parent / name
        if not target.exists() or sha256(target) != digest:
            failures.append(name)
    if failures:
        logger.warning(f"Manifest {path} failed for: {', '.join(failures)}")
    return failures


class RunStorage:
    """Writer for the files of one output directory.

    Every file written through this class is remembered so the manifest can
    list it with its checksum.
    """

    def __init__(self, out_dir: Path):
        """Initialize storage, creating the directory if needed.

        Args:
            out_dir: Run directory
        """
        self.out_dir = out_dir
        out_dir.mkdir(parents=True, exist_ok=True)
        self.written: list[Path] = []

    def _track(self, path: Path) -> Path:
        if path not in self.written:
            self.written.append(path)
        logger.debug(f"Wrote {path}")
        return path

    def write_matrix(
        self, name: str, matrix: np.ndarray, dims: tuple[int, ...], binary: bool = False
    ) -> Path:
        """Write an (n, L) row-major pixel matrix.

        Args:
            name: File stem
            matrix: (n, L) values, or an (n, *dims) stack
            dims: Image dims of each row
            binary: Write ``<name>.bin`` plus ``<name>.json`` instead of CSV

        Returns:
            Path of the data file

        Raises:
            DimensionError: If the matrix rows do not match dims
        """
        matrix = np.asarray(matrix, dtype=float)
        matrix = matrix.reshape(matrix.shape[0], -1)
        if matrix.shape[1] != int(np.prod(dims)):
            raise DimensionError(f"Rows of length {matrix.shape[1]} do not match dims {dims}")
        if binary:
            path = self.out_dir / f"{name}.bin"
            matrix.astype("<f8").tofile(path)
            sidecar = self.out_dir / f"{name}.json"
            sidecar.write_text(
                json.dumps({"shape": [matrix.shape[0], *dims], "dtype": "<f8", "order": "C"})
            )
            self._track(sidecar)
            return self._track(path)

        path = self.out_dir / f"{name}.csv"
        table = np.column_stack([np.arange(1, matrix.shape[0] + 1), _column_major(matrix, dims)])
        header = ",".join(["unit", *_pixel_names(dims)])
        fmt = ["%d"] + ["%.17g"] * (table.shape[1] - 1)
        np.savetxt(path, table, delimiter=",", header=header, comments="", fmt=fmt)
        return self._track(path)

    def write_labels(self, name: str, labels: np.ndarray, columns: list[str]) -> Path:
        """Write 1-based labels with one named column per labelling."""
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim == 1:
            labels = labels[:, None]
        if labels.shape[1] != len(columns):
            raise ParameterError(f"{labels.shape[1]} label columns but {len(columns)} names")
        path = self.out_dir / f"{name}.csv"
        table = np.column_stack([np.arange(1, labels.shape[0] + 1), labels])
        np.savetxt(path, table, delimiter=",", header=",".join(["unit", *columns]), comments="", fmt="%d")
        return self._track(path)

    def write_array(self, name: str, values: np.ndarray) -> Path:
        """Write a plain numeric table without header."""
        path = self.out_dir / f"{name}.csv"
        np.savetxt(path, np.atleast_2d(values), delimiter=",", fmt="%.17g")
        return self._track(path)

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        path = self.out_dir / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return self._track(path)

    def write_text(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        path.write_text(text)
        return self._track(path)

    def save_trace(self, name: str, trace: Trace) -> Path:
        """Write a trace as a compressed ``.npz`` archive."""
        path = self.out_dir / f"{name}.npz"
        padding = trace.padding
        arrays: dict[str, np.ndarray] = {
            "memberships": trace.memberships,
            "block_memberships": trace.block_memberships,
            "covariance_memberships": trace.covariance_memberships,
            "factor_counts": trace.factor_counts,
            "occupied": trace.occupied,
            "sweep_seconds": trace.sweep_seconds,
            "iterations": trace.iterations,
            "seed": np.array(trace.seed),
            "method": np.array(trace.method),
            "dims": np.array(trace.dims),
            "offsets": np.zeros(trace.n_units) if trace.offsets is None else trace.offsets,
            "original_dims": np.array(padding.original_dims if padding else [], dtype=np.int64),
            "pad_offsets": np.array(padding.offsets if padding else [], dtype=np.int64),
        }
        if trace.means is not None:
            arrays["means"] = trace.means
        np.savez_compressed(path, **arrays)
        return self._track(path)

    def write_manifest(self, manifest: RunManifest) -> Path:
        """Checksum every tracked file and write ``manifest.json``."""
        manifest.files = {
            str(path.relative_to(self.out_dir)): sha256(path) for path in self.written
        }
        path = self.out_dir / MANIFEST_NAME
        path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
        logger.info(f"Wrote manifest listing {len(manifest.files)} files to {path}")
        return path
