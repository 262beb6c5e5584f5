"""Unit tests for run-directory files and manifests."""

import json
from pathlib import Path

import numpy as np
import pytest
from test_helpers import make_trace

from fpdpm.errors import DimensionError, ParameterError
from fpdpm.storage import (
    MANIFEST_NAME,
    RunManifest,
    RunStorage,
    load_trace,
    read_labels,
    read_matrix,
    verify_manifest,
)
from fpdpm.wavelet import PaddingRecord


class TestMatrixFiles:
    """Test dataset matrices in CSV and binary form."""

    def test_csv_header_column_major(self, out_dir: Path) -> None:
        """Test that pixel columns run down the rows first."""
        path = RunStorage(out_dir).write_matrix("observed", np.zeros((1, 4)), (2, 2))
        header = path.read_text().splitlines()[0]
        assert header == "unit,v_0_0,v_1_0,v_0_1,v_1_1"

    def test_csv_values_column_major(self, out_dir: Path) -> None:
        """Test that a row-major image is written column by column."""
        image = np.array([[1.0, 2.0], [3.0, 4.0]])
        path = RunStorage(out_dir).write_matrix("observed", image.reshape(1, -1), (2, 2))
        assert path.read_text().splitlines()[1] == "1,1,3,2,4"

    def test_csv_read_back(self, out_dir: Path, rng: np.random.Generator) -> None:
        """Test that reading restores the row-major matrix and the image dims."""
        matrix = rng.standard_normal((3, 16))
        path = RunStorage(out_dir).write_matrix("observed", matrix, (4, 4))
        values, dims = read_matrix(path)
        np.testing.assert_array_equal(values, matrix)
        assert dims == (4, 4)

    def test_one_dimensional_header(self, out_dir: Path) -> None:
        """Test v_<index> columns for signals."""
        path = RunStorage(out_dir).write_matrix("signals", np.zeros((2, 8)), (8,))
        assert path.read_text().splitlines()[0].split(",")[1:3] == ["v_0", "v_1"]
        assert read_matrix(path)[1] == (8,)

    def test_binary_with_sidecar(self, out_dir: Path, rng: np.random.Generator) -> None:
        """Test raw float64 output and its shape sidecar."""
        matrix = rng.standard_normal((2, 64))
        path = RunStorage(out_dir).write_matrix("observed", matrix, (8, 8), binary=True)
        meta = json.loads((out_dir / "observed.json").read_text())
        assert meta == {"shape": [2, 8, 8], "dtype": "<f8", "order": "C"}
        assert path.stat().st_size == 2 * 64 * 8
        values, dims = read_matrix(path)
        np.testing.assert_array_equal(values, matrix)
        assert dims == (8, 8)

    def test_dims_mismatch(self, out_dir: Path) -> None:
        """Test that rows not matching dims raise DimensionError."""
        with pytest.raises(DimensionError):
            RunStorage(out_dir).write_matrix("observed", np.zeros((2, 10)), (4, 4))

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing data file raises ParameterError."""
        with pytest.raises(ParameterError):
            read_matrix(tmp_path / "absent.csv")

    def test_unrecognized_header(self, tmp_path: Path) -> None:
        """Test that foreign columns raise ParameterError."""
        path = tmp_path / "data.csv"
        path.write_text("unit,a,b\n1,0.5,0.25\n")
        with pytest.raises(ParameterError):
            read_matrix(path)

    def test_sidecar_size_mismatch(self, out_dir: Path) -> None:
        """Test that a sidecar promising more values than stored raises."""
        path = RunStorage(out_dir).write_matrix("observed", np.zeros((2, 16)), (4, 4), binary=True)
        (out_dir / "observed.json").write_text(json.dumps({"shape": [3, 4, 4]}))
        with pytest.raises(ParameterError):
            read_matrix(path)


class TestLabelFiles:
    """Test label CSVs."""

    def test_round_trip(self, out_dir: Path) -> None:
        """Test that named label columns read back unchanged."""
        labels = np.array([[1, 2], [2, 2], [1, 1]])
        path = RunStorage(out_dir).write_labels("labels", labels, ["level_0", "level_1"])
        values, names = read_labels(path)
        np.testing.assert_array_equal(values, labels)
        assert names == ["level_0", "level_1"]

    def test_single_column(self, out_dir: Path) -> None:
        """Test that 1-D labels become one column."""
        path = RunStorage(out_dir).write_labels("global", np.array([3, 1]), ["global"])
        assert path.read_text().splitlines() == ["unit,global", "1,3", "2,1"]

    def test_column_count_mismatch(self, out_dir: Path) -> None:
        """Test that a wrong number of names raises ParameterError."""
        with pytest.raises(ParameterError):
            RunStorage(out_dir).write_labels("labels", np.ones((3, 2)), ["only"])


class TestTraceFiles:
    """Test saving and loading chain traces."""

    def test_round_trip(self, out_dir: Path, rng: np.random.Generator) -> None:
        """Test that every recorded array survives the archive."""
        memberships = rng.integers(1, 4, size=(5, 6, 3))
        trace = make_trace(memberships, means=rng.standard_normal((5, 6, 16)), seed=7)
        path = RunStorage(out_dir).save_trace("trace_0", trace)
        loaded = load_trace(path)
        np.testing.assert_array_equal(loaded.memberships, trace.memberships)
        np.testing.assert_array_equal(loaded.occupied, trace.occupied)
        np.testing.assert_array_equal(loaded.means, trace.means)
        np.testing.assert_array_equal(loaded.iterations, trace.iterations)
        assert loaded.seed == 7
        assert loaded.method == "fpdpm"
        assert loaded.dims == (4, 4)
        assert loaded.padding is None

    def test_without_means(self, out_dir: Path) -> None:
        """Test that a trace without means loads with means None."""
        path = RunStorage(out_dir).save_trace("trace_0", make_trace(np.ones((2, 3, 2), dtype=int)))
        assert load_trace(path).means is None

    def test_padding_restored(self, out_dir: Path) -> None:
        """Test that the padding record is rebuilt from the archive."""
        trace = make_trace(np.ones((2, 3, 2), dtype=int))
        trace.padding = PaddingRecord(original_dims=(3, 3), offsets=(0, 0), padded_dims=(4, 4))
        loaded = load_trace(RunStorage(out_dir).save_trace("trace_0", trace))
        assert loaded.padding == trace.padding

    def test_missing_arrays(self, tmp_path: Path) -> None:
        """Test that an archive without the trace arrays raises ParameterError."""
        path = tmp_path / "other.npz"
        np.savez(path, x=np.zeros(3))
        with pytest.raises(ParameterError):
            load_trace(path)


class TestManifest:
    """Test run manifests and checksum verification."""

    def test_lists_written_files(self, out_dir: Path) -> None:
        """Test that the manifest lists every tracked file with its digest."""
        storage = RunStorage(out_dir)
        storage.write_json("metrics", {"k": 2})
        storage.write_text("summary.txt", "k = 2\n")
        path = storage.write_manifest(RunManifest(command="summarize", config="", seeds=[1]))
        manifest = RunManifest.read(path)
        assert path.name == MANIFEST_NAME
        assert set(manifest.files) == {"metrics.json", "summary.txt"}
        assert all(len(digest) == 64 for digest in manifest.files.values())
        assert manifest.seeds == [1]
        assert "numpy" in manifest.versions

    def test_verify_clean(self, out_dir: Path) -> None:
        """Test that untouched outputs verify."""
        storage = RunStorage(out_dir)
        storage.write_labels("labels", np.array([1, 2]), ["cluster"])
        path = storage.write_manifest(RunManifest(command="fit", config=""))
        assert verify_manifest(path) == []

    def test_verify_detects_tampering(self, out_dir: Path) -> None:
        """Test that edited and deleted files are reported."""
        storage = RunStorage(out_dir)
        labels = storage.write_labels("labels", np.array([1, 2]), ["cluster"])
        metrics = storage.write_json("metrics", {"k": 2})
        path = storage.write_manifest(RunManifest(command="fit", config=""))
        labels.write_text("unit,cluster\n1,2\n2,1\n")
        metrics.unlink()
        assert sorted(verify_manifest(path)) == ["labels.csv", "metrics.json"]

    def test_unreadable_manifest(self, tmp_path: Path) -> None:
        """Test that a malformed manifest raises ParameterError."""
        path = tmp_path / MANIFEST_NAME
        path.write_text("{not json")
        with pytest.raises(ParameterError):
            RunManifest.read(path)
