"""CLI behavior: exit codes, --print-config, file outputs, field diagnostics."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = sys.argv[1]
CONFIGS = Path(sys.argv[2])


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def test_print_config_is_valid_json():
    r = run("--print-config")
    assert r.returncode == 0, r.stderr
    cfg = json.loads(r.stdout)
    assert cfg["gamma3N"] == 5.0
    assert cfg["tau"] == 0.25
    assert cfg["grid"]["n"] == 1024


def test_missing_config_file_is_exit_2():
    r = run("spectrum", "--config", "/nonexistent/nope.json")
    assert r.returncode == 2
    assert "nope.json" in r.stderr


def test_missing_tau_names_the_field(tmp: Path):
    bad = tmp / "missing_tau.json"
    bad.write_text('{"gamma3N": 5.0}')
    r = run("spectrum", "--config", str(bad))
    assert r.returncode == 2
    assert "tau" in r.stderr


def test_unknown_key_is_exit_2(tmp: Path):
    bad = tmp / "unknown.json"
    bad.write_text('{"gamma3N": 5.0, "tau": 0.25, "mystery": 1}')
    r = run("decompose", "--config", str(bad))
    assert r.returncode == 2
    assert "mystery" in r.stderr


def test_zero_step_sweep_is_exit_2(tmp: Path):
    bad = tmp / "sweep0.json"
    bad.write_text('{"gamma3N": 5.0, "tau": 0.25, "sweep": {"steps": 0}}')
    r = run("sweep", "--config", str(bad))
    assert r.returncode == 2
    assert "steps" in r.stderr


def test_spectrum_writes_csv_and_svg(tmp: Path):
    cfg = tmp / "small.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 64},'
        ' "ensembles": [{"dp": 30.0, "dq": 0.0}, {"dp": -30.0, "dq": 0.0}]}'
    )
    out = tmp / "spec"
    r = run("spectrum", "--config", str(cfg), "--out", str(out), "--plot")
    assert r.returncode == 0, r.stderr
    lines = (tmp / "spec.csv").read_text().splitlines()
    assert lines[0] == "dws,dwi,re,im,abs2"
    assert len(lines) == 1 + 64 * 64
    assert (tmp / "spec.svg").read_text().startswith("<svg")


def test_decompose_reports_paired_eigenvalues(tmp: Path):
    cfg = tmp / "pairs.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 192},'
        ' "ensembles": [{"dp": 30.0, "dq": 0.0}, {"dp": -30.0, "dq": 0.0}], "rank": 6}'
    )
    out = tmp / "dec"
    r = run("decompose", "--config", str(cfg), "--out", str(out))
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp / "dec.json").read_text())
    assert len(doc["eigenvalues"]) == 6
    assert doc["pairs"][0][:2] == [1, 2]
    assert abs(doc["eigenvalues"][0] - doc["eigenvalues"][1]) < 1e-2 * doc["eigenvalues"][0]
    assert (tmp / "dec_signal_modes.csv").exists()
    assert (tmp / "dec_idler_modes.csv").exists()


def test_spectrum_csv_is_point_reflection_symmetric(tmp: Path):
    cfg = tmp / "sym.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 256},'
        ' "ensembles": [{"dp": 30.0, "dq": 0.0}, {"dp": -30.0, "dq": 0.0}]}'
    )
    out = tmp / "sym"
    r = run("spectrum", "--config", str(cfg), "--out", str(out))
    assert r.returncode == 0, r.stderr
    rows = (tmp / "sym.csv").read_text().splitlines()[1:]
    n = 256
    abs2 = [float(line.rsplit(",", 1)[1]) for line in rows]
    worst = max(
        abs(abs2[j * n + k] - abs2[(n - 1 - j) * n + (n - 1 - k)])
        for j in range(0, n, 5)
        for k in range(n)
    )
    assert worst < 1e-10


def test_out_of_window_shift_is_numerical_error(tmp: Path):
    cfg = tmp / "far.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 64},'
        ' "ensembles": [{"dp": 1e6, "dq": 0.0}]}'
    )
    r = run("spectrum", "--config", str(cfg))
    assert r.returncode == 3
    assert "window" in r.stderr


def test_log_level_env_silences_progress(tmp: Path):
    cfg = tmp / "quiet.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 32}}'
    )
    out = tmp / "quiet_out"
    env = {"BIPHOTON_LOG": "quiet", "PATH": "/usr/bin:/bin"}
    r = subprocess.run(
        [CLI, "spectrum", "--config", str(cfg), "--out", str(out)],
        capture_output=True,
        text=True,
        env=env,
    )
    assert r.returncode == 0
    assert r.stderr == ""


def test_verify_passes_on_defaults(tmp: Path):
    cfg = tmp / "verify.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 256},'
        ' "dynamics": {"dt": 0.00025}}'
    )
    out = tmp / "rep"
    r = run("verify", "--config", str(cfg), "--out", str(out))
    assert r.returncode == 0, r.stdout + r.stderr
    doc = json.loads((tmp / "rep.json").read_text())
    assert doc["pass"] is True
    assert doc["max_oracle_deviation"] < 1e-5
    assert "pass" in r.stdout


def test_verify_flags_nonadiabatic_drive(tmp: Path):
    cfg = tmp / "strong.json"
    cfg.write_text(
        '{"gamma3N": 5.0, "tau": 0.25, "grid": {"lo": -300.0, "hi": 300.0, "n": 128},'
        ' "dynamics": {"omega_a_area": 2.0, "omega_b_area": 2.0,'
        ' "delta1": 2.0, "delta2": 2.0, "dt": 0.0002}}'
    )
    out = tmp / "strong_rep"
    r = run("verify", "--config", str(cfg), "--out", str(out))
    assert r.returncode == 4
    doc = json.loads((tmp / "strong_rep.json").read_text())
    assert doc["pass"] is False
    failed = {c["name"] for c in doc["checks"] if not c["pass"]}
    assert "adiabatic_upper_tracking" in failed
    # The integral identity holds regardless of the drive regime.
    assert doc["max_oracle_deviation"] < 1e-5


def main():
    with tempfile.TemporaryDirectory() as td:
        tmp = Path(td)
        count = 0
        for name, fn in sorted(globals().items()):
            if not name.startswith("test_"):
                continue
            fn(tmp) if fn.__code__.co_argcount else fn()
            print(f"ok {name}")
            count += 1
        print(f"{count} CLI tests passed")


if __name__ == "__main__":
    main()
