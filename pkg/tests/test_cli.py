"""End-to-end tests for the command line interface."""
import csv
import json

from cws552.cli import main
from cws552.nmr_noise import NoiseModel


def test_verify_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out
    assert "FAIL" not in out


def test_verify_json_report(capsys):
    assert main(["verify", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    assert report["distance"]["value"] == 2
    assert report["distance"]["witness"] is not None
    locations = report["erasure"]["locations"]
    assert sorted(locations) == ["1", "2", "3", "4", "5"]
    c = locations["3"]["c_matrix"]
    assert len(c) == 4 and len(c[0]) == 4 and len(c[0][0]) == 2
    assert abs(c[0][0][0] - 1.0) < 1e-12  # diagonal of the identity


def test_export_then_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "code.json"
    assert main(["export-code", "--out", str(path)]) == 0
    capsys.readouterr()
    assert main(["verify", "--code", str(path)]) == 0


def test_verify_rejects_corrupted_export(tmp_path, capsys):
    path = tmp_path / "code.json"
    assert main(["export-code", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    doc["codewords"][0][1] = [0.7, 0.0]
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", "--code", str(path)]) == 1
    assert "overall: FAIL" in capsys.readouterr().out


def test_sweep_setting_b_outputs(tmp_path, capsys):
    out = tmp_path / "b"
    assert main(["sweep", "--setting", "B", "--grid", "5", "--out", str(out)]) == 0
    with open(out / "setting_B.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1 + 5 * 3 * 5
    assert rows[0][0] == "setting" and rows[1][0] == "B"
    fits = json.loads((out / "setting_B_fits.json").read_text())
    assert fits["noise"] is None
    for loc in ("1", "2", "3", "4", "5"):
        entry = fits["locations"][loc]
        assert abs(entry["alpha0"] - 1.0) < 1e-8
        assert abs(entry["a"] - 1.0) < 1e-8
        assert abs(entry["b"]) < 1e-8


def test_sweep_outputs_are_byte_identical(tmp_path, capsys):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    args = ["sweep", "--setting", "B", "--grid", "4"]
    assert main(args + ["--out", str(d1)]) == 0
    assert main(args + ["--out", str(d2)]) == 0
    assert (d1 / "setting_B.csv").read_bytes() == (d2 / "setting_B.csv").read_bytes()
    assert (d1 / "setting_B_fits.json").read_bytes() == (d2 / "setting_B_fits.json").read_bytes()


def test_sweep_setting_a(tmp_path, capsys):
    out = tmp_path / "a"
    assert main(["sweep", "--setting", "A", "--seed", "7", "--out", str(out)]) == 0
    with open(out / "setting_A.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 21
    summary = json.loads((out / "setting_A_summary.json").read_text())
    assert summary["all_match"] is True
    assert summary["rows"] == 20
    assert summary["seed"] == 7


def test_sweep_setting_c_with_noise_file(tmp_path, capsys):
    noise_path = tmp_path / "noise.json"
    noise_path.write_text(json.dumps(NoiseModel.default().to_json_dict()))
    out = tmp_path / "c"
    assert (
        main(["sweep", "--setting", "C", "--grid", "5", "--noise", str(noise_path), "--out", str(out)])
        == 0
    )
    fits = json.loads((out / "setting_C_fits.json").read_text())
    assert fits["noise"] is not None
    for loc in ("1", "2", "3", "4", "5"):
        entry = fits["locations"][loc]
        assert 0.0 < entry["ibar"] < 1.0
        assert 0.9 < entry["a"] < 1.1


def test_spectrum_command(tmp_path, capsys):
    system_path = tmp_path / "system.json"
    system_path.write_text(
        json.dumps(
            {
                "nu": [30.0, -20.0],
                "J": [[0.0, 7.0], [7.0, 0.0]],
                "T1": [5.0, 5.0],
                "T2": [1.0, 1.0],
                "T2star": [2.0, 2.0],
            }
        )
    )
    out = tmp_path / "spec.csv"
    assert (
        main(
            [
                "spectrum",
                "--system", str(system_path),
                "--observe", "1",
                "--state", "+0",
                "--t-max", "4.0",
                "--dt", "0.005",
                "--out", str(out),
            ]
        )
        == 0
    )
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    best = max(rows, key=lambda r: float(r["magnitude"]))
    assert abs(float(best["frequency_hz"]) - 33.5) <= 0.25 + 1e-9


def test_config_file_supplies_defaults_and_flags_win(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    out_a = tmp_path / "from_config"
    cfg.write_text(json.dumps({"setting": "A", "out": str(out_a), "grid": 4}))
    assert main(["--config", str(cfg), "sweep"]) == 0
    assert (out_a / "setting_A.csv").exists()

    out_b = tmp_path / "flag_override"
    assert main(["--config", str(cfg), "sweep", "--setting", "B", "--out", str(out_b)]) == 0
    assert (out_b / "setting_B.csv").exists()
    with open(out_b / "setting_B.csv", newline="") as fh:
        assert len(list(csv.reader(fh))) == 1 + 5 * 3 * 4  # grid=4 came from the config


def test_error_paths_return_nonzero(tmp_path, capsys):
    assert main(["sweep", "--setting", "B"]) == 1  # no output directory
    assert "error:" in capsys.readouterr().err

    assert main(["spectrum", "--system", str(tmp_path / "missing.json"), "--state", "00", "--out", str(tmp_path / "x.csv")]) == 1

    system_path = tmp_path / "sys.json"
    system_path.write_text(
        json.dumps({"nu": [10.0], "J": [[0.0]], "T1": [1.0], "T2": [1.0], "T2star": [1.0]})
    )
    assert (
        main(["spectrum", "--system", str(system_path), "--state", "2", "--out", str(tmp_path / "y.csv")])
        == 1
    )
    assert "state spec" in capsys.readouterr().err

    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"setting": "Q", "out": str(tmp_path / "q")}))
    assert main(["--config", str(cfg), "sweep"]) == 1


def test_qecc_state_spec_requires_five_spins(tmp_path, capsys):
    system_path = tmp_path / "sys2.json"
    system_path.write_text(
        json.dumps(
            {
                "nu": [30.0, -20.0],
                "J": [[0.0, 7.0], [7.0, 0.0]],
                "T1": [5.0, 5.0],
                "T2": [1.0, 1.0],
                "T2star": [2.0, 2.0],
            }
        )
    )
    assert (
        main(["spectrum", "--system", str(system_path), "--state", "qecc:X:3", "--out", str(tmp_path / "z.csv")])
        == 1
    )
    assert "five-spin" in capsys.readouterr().err


def test_qecc_state_spectrum_runs(tmp_path, capsys):
    from cws552.nmr_noise import NmrSystem

    system_path = tmp_path / "sys5.json"
    system_path.write_text(json.dumps(NmrSystem.placeholder_five_spin().to_json_dict()))
    out = tmp_path / "qecc_spec.csv"
    assert (
        main(
            [
                "spectrum",
                "--system", str(system_path),
                "--observe", "4",
                "--state", "qecc:E:3",
                "--t-max", "2.0",
                "--dt", "0.002",
                "--out", str(out),
            ]
        )
        == 0
    )
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    total = sum(float(r["real"]) for r in rows)
    # observed spin 4 carries the protected coherence; M(0) = 1
    assert abs(total - 1.0) < 1e-6
