"""Command-line interface: artifacts, exit codes, reproducibility."""

import csv
import json

import pytest

from risim.cli import main


def _read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_design_writes_labeled_and_scatter(tmp_path):
    rc = main([
        "design", "--n-elements", "7", "--n-antennas", "3", "--phase-levels", "2",
        "--points", "8", "--seed", "1", "--output", str(tmp_path),
    ])
    assert rc == 0
    labeled = _read_rows(tmp_path / "constellation_proposed.csv")
    scatter = _read_rows(tmp_path / "scatter_proposed.csv")
    assert len(labeled) == 8
    assert len(scatter) == 128
    assert set(labeled[0]) == {
        "pattern_id", "phase_indices", "re", "im", "gain", "tx_phase_rad", "label",
    }
    assert sorted(r["label"] for r in labeled) == sorted(format(i, "03b") for i in range(8))
    manifest = json.loads((tmp_path / "manifest_design_proposed.json").read_text())
    assert manifest["config"]["seed"] == 1
    assert manifest["scheme"] == "proposed"


def test_design_is_byte_reproducible(tmp_path):
    args = [
        "design", "--n-elements", "5", "--n-antennas", "2", "--phase-levels", "2",
        "--points", "4", "--seed", "42",
    ]
    a_dir, b_dir = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--output", str(a_dir)]) == 0
    assert main(args + ["--output", str(b_dir)]) == 0
    for name in ("constellation_proposed.csv", "scatter_proposed.csv"):
        assert (a_dir / name).read_bytes() == (b_dir / name).read_bytes()


def test_missing_required_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["design", "--points", "4"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_invalid_scheme_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([
            "ber", "--n-elements", "4", "--points", "4", "--scheme", "nonsense",
            "--snr", "0:10:5", "--trials", "10",
        ])
    assert exc.value.code == 2


def test_runtime_failure_exits_1(tmp_path, capsys):
    # L > B^N is a config-level error, reported on stderr with exit 1
    rc = main([
        "design", "--n-elements", "2", "--points", "8", "--seed", "0",
        "--output", str(tmp_path),
    ])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_ber_grid_row_count(tmp_path):
    rc = main([
        "ber", "--scheme", "proposed", "--n-elements", "4", "--points", "4",
        "--n-antennas", "3", "--snr", "0:30:2", "--trials", "200",
        "--seed", "7", "--output", str(tmp_path),
    ])
    assert rc == 0
    rows = _read_rows(tmp_path / "ber_proposed.csv")
    assert len(rows) == 16
    assert [r["snr_db"] for r in rows][0] == "0.0"
    assert all(r["ber_bound"] == "" for r in rows)


def test_ber_with_bound_and_csi(tmp_path):
    rc = main([
        "ber", "--scheme", "proposed", "--n-elements", "3", "--points", "4",
        "--n-antennas", "2", "--snr", "0:10:5", "--trials", "300",
        "--seed", "3", "--csi", "imperfect", "--sigma-z-dbm", "-50",
        "--pilot-dbm", "-30", "--coherence-trials", "100",
        "--bound", "--bound-s", "20", "--output", str(tmp_path),
    ])
    assert rc == 0
    rows = _read_rows(tmp_path / "ber_proposed.csv")
    assert len(rows) == 3
    assert all(float(r["ber_bound"]) >= 0.0 for r in rows)
    manifest = json.loads((tmp_path / "manifest_ber_proposed.json").read_text())
    assert manifest["csi"] == "imperfect"
    assert manifest["bound"] is True


def test_ber_no_sym_flag_resolves_scheme(tmp_path):
    rc = main([
        "ber", "--n-elements", "3", "--points", "4", "--n-antennas", "2",
        "--snr", "0:0:1", "--trials", "100", "--no-sym",
        "--seed", "2", "--output", str(tmp_path),
    ])
    assert rc == 0
    assert (tmp_path / "ber_proposed-no-sym.csv").exists()


def test_scheme_b_design_dump(tmp_path):
    rc = main([
        "design", "--scheme", "scheme-b", "--n-elements", "4", "--points", "4",
        "--n-antennas", "2", "--seed", "5", "--output", str(tmp_path),
    ])
    assert rc == 0
    rows = _read_rows(tmp_path / "constellation_scheme-b.csv")
    assert [r["phase_indices"] for r in rows] == ["ook0+", "ook0-", "ook1+", "ook1-"]


def test_complexity_report(tmp_path, capsys):
    rc = main([
        "complexity", "--phase-levels", "2", "--n-elements", "7",
        "--points", "8", "--kmeans-iters", "10",
    ])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["proposed_simplified"] == 12096
    assert report["scheme_c"] == 8


def test_complexity_rejects_single_point():
    rc = main(["complexity", "--n-elements", "4", "--points", "1"])
    assert rc == 1


def test_env_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("RISIM_SEED", "123")
    rc = main([
        "design", "--n-elements", "3", "--points", "4", "--n-antennas", "2",
        "--output", str(tmp_path),
    ])
    assert rc == 0
    manifest = json.loads((tmp_path / "manifest_design_proposed.json").read_text())
    assert manifest["config"]["seed"] == 123
