import json
from pathlib import Path

import numpy as np
import pytest

from nanoring import export
from nanoring.cli import main
from nanoring.config import ConfigError, load_config, parse_pump

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
CHEAP = ["--set", "numerics.steps_per_oc=512", "--set", "numerics.samples_per_oc=32",
         "--set", "laser.duration_oc=10", "--set", "ring.m_max=32"]


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("[ring]\nradius = 2.7\nm_max = 32\n\n[laser]\nintensity = 1e14\n"
                    "photon_energy = 2.0\nbeta = 45\n\n[pump]\nsign = none\n")
    return path


def test_load_config(config):
    cfg = load_config(config, ["laser.beta=10", "pump.sign=-1"])
    assert cfg.ring.m_max == 32 and cfg.laser.beta == 10.0 and cfg.pump == -1
    assert cfg.settings().energies[0] == pytest.approx(0.25)


def test_output_env(config, monkeypatch, tmp_path):
    monkeypatch.setenv("NANORING_OUTPUT_DIR", str(tmp_path / "env"))
    assert load_config(config).output == str(tmp_path / "env")


@pytest.mark.parametrize("value,sign", [("none", 0), ("+1", 1), ("-1", -1), ("negative", -1)])
def test_parse_pump(value, sign):
    assert parse_pump(value) == sign


@pytest.mark.parametrize("override", ["laser.beta=abc", "ring.m_max=2.5", "laser.colour=1",
                                      "nowhere.x=1", "pump.sign=2", "laser.beta=120", "beta"])
def test_bad_overrides(override):
    with pytest.raises(ConfigError):
        load_config(None, [override])


def test_out_of_range_warns(caplog):
    load_config(None, ["laser.intensity=1e16"])
    assert "outside the studied range" in caplog.text


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("this is not = an ini file\n[ring\n")
    assert main(["run", str(bad), "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path):
    assert main(["run", str(tmp_path / "absent.ini")]) == 2


def test_numerical_failure_exits_3(config, tmp_path):
    assert main(["run", str(config), "--out", str(tmp_path), "--set", "ring.m_max=3"] + CHEAP[:4]) == 3


def test_run_writes_artifacts(config, tmp_path):
    out = tmp_path / "a"
    # full 32-oc baseline: circular light leaves L_z above threshold
    assert main(["run", str(config), "--out", str(out)] + CHEAP[:4]) == 0
    report = export.read_json(out / "report.json")
    assert report["bits"]["L_z"] == 1
    assert report["max_norm_deviation"] < 1e-6
    traj = export.read_trajectory_csv(out / "trajectory.csv")
    assert traj["t_oc"][-1] == pytest.approx(32.0)
    assert traj["L_z"][-1] == report["final_lz"]
    energies, power = export.read_spectrum_csv(out / "spectrum.csv")
    assert energies.size == power.size and np.all(power >= 0)
    scal = export.read_scalogram_bin(out / "scalogram.bin")
    assert scal.magnitude.shape == (588, traj["t_oc"].size)


def test_outputs_bit_identical(config, tmp_path):
    for name in ("a", "b"):
        assert main(["run", str(config), "--out", str(tmp_path / name)] + CHEAP) == 0
    for f in ("trajectory.csv", "spectrum.csv", "scalogram.bin", "report.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_laser_off_gives_zero_bits(config, tmp_path):
    assert main(["run", str(config), "--out", str(tmp_path), "--set", "laser.intensity=0"] + CHEAP) == 0
    bits = export.read_json(tmp_path / "report.json")["bits"]
    assert set(bits.values()) == {0}


def test_csv_format(config, tmp_path):
    main(["run", str(config), "--out", str(tmp_path)] + CHEAP)
    raw = (tmp_path / "trajectory.csv").read_bytes()
    assert b"\r" not in raw
    assert raw.splitlines()[0] == b"t_oc,D_x,D_y,L_z,norm"


def test_sweep_beta(config, tmp_path):
    assert main(["sweep-beta", str(config), "--betas", "0,45,90", "--out", str(tmp_path)] + CHEAP) == 0
    table = export.read_beta_sweep_csv(tmp_path / "beta_sweep.csv")
    assert table[:, 0].tolist() == [0.0, 45.0, 90.0]
    assert abs(table[0, 1]) < 1e-3 and abs(table[2, 1]) < 1e-3
    assert table[1, 2] > 0


def test_sweep_beta_empty_exits_2(config, tmp_path):
    assert main(["sweep-beta", str(config), "--betas", ",", "--out", str(tmp_path)]) == 2
    assert main(["sweep-beta", str(config), "--betas", "a,b", "--out", str(tmp_path)]) == 2


def test_gate_json(config, tmp_path, capsys):
    assert main(["gate", str(config), "--out", str(tmp_path)] + CHEAP) == 0
    payload = export.read_json(tmp_path / "truth_table.json")
    assert payload["context"] == "none"
    assert [r["input"] for r in payload["rows"]] == [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert payload["rows"][0]["bits"] == [0, 0, 0, 0, 0]
    assert set(payload["classification"]) == {"H_I", "H_II", "H_R1", "H_R2", "L_z"}
    assert json.loads(capsys.readouterr().out) == payload["classification"]


def test_circuit(capsys):
    assert main(["circuit", "full", "1", "0", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outputs"] == [0, 1]
    assert main(["circuit", "toffoli", "1", "1", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["outputs"] == [1, 1, 1]


@pytest.mark.parametrize("args", [["half", "1"], ["half", "1", "2"], ["full", "x", "0", "1"],
                                  ["half", "1", "0", "--simulate"]])
def test_circuit_bad_args(args):
    assert main(["circuit"] + args) == 2


def test_memory(capsys):
    assert main(["memory", "write", "read", "erase", "--array", "3",
                 "--set", "ring.m_max=32"]) == 0
    log = json.loads(capsys.readouterr().out)["log"]
    assert [row["bit"] for row in log] == [1, 1, 0]
    assert log[0]["array_moment"] == pytest.approx(-0.5 * 3 * log[0]["lz"])


def test_memory_bad_array():
    assert main(["memory", "read", "--array", "0"]) == 2


def test_line_subset(tmp_path):
    cfg = load_config(None, ["spectral.lines=H_R1, H_I"])
    assert cfg.settings().lines == ("H_I", "H_R1")
    with pytest.raises(ConfigError):
        load_config(None, ["spectral.lines=H_I,H_X"])


def test_large_radius_config(tmp_path):
    assert main(["run", str(CONFIGS / "large_radius.ini"), "--out", str(tmp_path)] + CHEAP[:4]) == 0
    report = export.read_json(tmp_path / "report.json")
    assert set(report["lines"]) == {"H_I", "H_R1"}
    assert set(report["bits"]) == {"H_I", "H_R1", "L_z"}
