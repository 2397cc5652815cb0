"""Command-line interface: files, formats, exit codes, determinism."""

import csv
import json

import pytest

from boostlab.cli import config_text, load_config_file, main

CONFIG = """\
# two mirrored lobes against a single recoil lobe
model = sum_two_lobes
sigma_over_m = 1.0
p_centers = 17.13,0,-98.5; -17.13,0,-98.5
q_centers = 0,0,-98.5
xi_max = 2.0
xi_samples = 3
nodes_per_axis = 7
truncation = 5
spin_state = phi+
"""


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_orbit_writes_files(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(["orbit", "eprb", "--nodes", "7", "--xi-samples", "4", "-o", str(out)])
    assert code == 0
    rows = _read_csv(out / "orbit.csv")
    assert rows[0] == ["xi", "concurrence", "t_xx", "t_yy", "t_zz", "bell_diagonal"]
    assert len(rows) == 5
    assert rows[1][0] == "0"
    assert float(rows[1][1]) == pytest.approx(1.0, abs=1e-9)
    assert rows[1][5] == "true" and rows[2][5] == "false"
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "orbit"
    assert manifest["scenario"]["name"] == "eprb"
    assert manifest["grid"]["nodes_per_axis"] == 7
    assert len(manifest["config_sha256"]) == 64
    assert set(manifest["outputs"]) == {"orbit.csv", "orbit.plt", "concurrence.plt"}
    assert (out / "orbit.plt").exists() and (out / "concurrence.plt").exists()
    assert "final concurrence" in capsys.readouterr().out


def test_orbit_unknown_preset_exits_2(tmp_path, capsys):
    assert main(["orbit", "nosuch", "-o", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "eprb" in err and "fcross-large" in err


def test_orbit_output_is_reproducible(tmp_path):
    args = ["orbit", "axis-0", "--nodes", "7", "--xi-samples", "4"]
    assert main(args + ["-o", str(tmp_path / "a")]) == 0
    assert main(args + ["-o", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a/orbit.csv").read_bytes() == (tmp_path / "b/orbit.csv").read_bytes()


def test_orbit_spin_state_override(tmp_path):
    out = tmp_path / "psi"
    assert main(["orbit", "axis-0", "--nodes", "5", "--xi-samples", "3", "--spin-state", "psi-", "-o", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"]["spin_state"] == "psi-"
    rows = _read_csv(out / "orbit.csv")
    assert [float(v) for v in rows[1][2:5]] == pytest.approx([-1.0, -1.0, -1.0], abs=1e-9)


def test_orbit_from_config_file(tmp_path):
    cfg = tmp_path / "custom.cfg"
    cfg.write_text(CONFIG)
    out = tmp_path / "run"
    assert main(["orbit", str(cfg), "-o", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"]["name"] == "custom"
    assert manifest["scenario"]["model"] == "sum_two_lobes"
    assert len(_read_csv(out / "orbit.csv")) == 4


def test_config_file_round_trip(tmp_path):
    first = tmp_path / "a.cfg"
    first.write_text(CONFIG)
    loaded = load_config_file(first)
    second = tmp_path / "b.cfg"
    second.write_text(config_text(loaded))
    assert config_text(load_config_file(second)) == config_text(loaded)


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("model = eprb\nwibble = 3\n")
    assert main(["orbit", str(bad), "-o", str(tmp_path)]) == 2
    assert "unknown key" in capsys.readouterr().err

    bad.write_text("model = eprb\np_centers = 1,2\nq_centers = 0,0,0\n")
    assert main(["orbit", str(bad), "-o", str(tmp_path)]) == 2

    bad.write_text("p_centers = 1,0,0\nq_centers = -1,0,0\n")
    assert main(["orbit", str(bad), "-o", str(tmp_path)]) == 2
    assert "missing required key" in capsys.readouterr().err

    bad.write_text("model = eprb\nmodel = eprb\np_centers = 1,0,0\nq_centers = -1,0,0\n")
    assert main(["orbit", str(bad), "-o", str(tmp_path)]) == 2
    assert "duplicate" in capsys.readouterr().err


def test_cli_flags_override_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(CONFIG)
    out = tmp_path / "run"
    assert main(["orbit", str(cfg), "--nodes", "5", "--xi-samples", "2", "-o", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["grid"]["nodes_per_axis"] == 5
    assert manifest["xi_schedule"]["samples"] == 2


def test_twr_surface_files(tmp_path):
    out = tmp_path / "twr"
    assert main(["twr", "--mode", "surface", "--samples", "10", "-o", str(out)]) == 0
    rows = _read_csv(out / "twr_surface.csv")
    assert rows[0] == ["xi", "theta", "omega"]
    assert len(rows) == 101
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"]["mode"] == "surface"
    assert (out / "twr_surface.plt").exists()


def test_twr_reversed_range_exits_2(tmp_path, capsys):
    assert main(["twr", "--mode", "surface", "--xi-min", "3", "--xi-max", "1", "-o", str(tmp_path)]) == 2
    assert "lo < hi" in capsys.readouterr().err


def test_twr_samples_files_and_quoting(tmp_path):
    out = tmp_path / "twr"
    code = main(["twr", "--mode", "samples", "--xi-samples", "4", "--momentum", "1,2,3", "-o", str(out)])
    assert code == 0
    raw = (out / "twr_samples.csv").read_text()
    assert raw.splitlines()[0] == "momentum,xi,omega"
    # momentum labels contain commas, so they must arrive quoted
    assert '"(1,2,3)"' in raw
    assert len(_read_csv(out / "twr_samples.csv")) == 5


def test_twr_bad_momentum_exits_2(tmp_path):
    assert main(["twr", "--mode", "samples", "--momentum", "1,nope,3", "-o", str(tmp_path)]) == 2


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 12
    assert any(line.startswith("eprb") and "eprb" in line for line in lines)
    assert any("entangled_phi_plus" in line for line in lines)


def test_verify_fast_passes_at_default_grid(capsys):
    assert main(["verify", "--level", "fast"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "criteria passed" in out


def test_verify_fast_detects_under_resolved_grid(capsys):
    assert main(["verify", "--level", "fast", "--nodes", "5"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out
    assert "normalization grid consistency" in out
