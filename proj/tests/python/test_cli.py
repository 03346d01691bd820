"""End-to-end tests of the ddopt binary: exit codes, files, reproducibility."""

import json
import os
import subprocess
import sys

BIN = os.environ["DDOPT_BIN"]
PRESETS = os.environ["DDOPT_PRESETS"]


def run(*argv, expect=0):
    proc = subprocess.run([BIN, *argv], capture_output=True, text=True)
    assert proc.returncode == expect, (argv, proc.returncode, proc.stderr, proc.stdout)
    return proc


def test_bound_and_optimize_roundtrip(tmp_path):
    cfg = os.path.join(PRESETS, "trichromatic.cfg")
    out = run("bound", "--config", cfg, "--format", "json").stdout
    bound = json.loads(out)
    assert bound["constraint_ok"]
    assert bound["epsilon_sm"] < bound["lambda"] * 0 + 10  # finite, parsed

    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    run("optimize", "--config", cfg, "--seed", "5", "--out", str(d1))
    run("optimize", "--config", cfg, "--seed", "5", "--out", str(d2))
    for name in ("pulses.txt", "metrics.csv", "metrics.json"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    pulses = (d1 / "pulses.txt").read_text().splitlines()
    assert pulses[0].startswith("# T_us=32.000000000")
    assert any(line.startswith("# config_sha256=") for line in pulses)

    ev = run("evaluate", "--config", cfg, "--seed", "5", "--pulses",
             str(d1 / "pulses.txt"), "--format", "csv").stdout.splitlines()
    opt_csv = (d1 / "metrics.csv").read_text().splitlines()
    assert ev[-1] == opt_csv[-1]  # identical metrics row


def test_exit_codes(tmp_path):
    run("bound", "--config", "/does/not/exist.cfg", expect=2)
    bad = tmp_path / "bad.cfg"
    bad.write_text("[grid]\nT_us = 8\ndt_us = 0.5\n[signal]\ncomponent = 0 0 0\n")
    run("bound", "--config", str(bad), expect=4)  # h identically zero
    proc = run("fit", "--data", "/does/not/exist.csv", "--T", "5", "--json-errors",
               expect=2)
    err = json.loads(proc.stdout)
    assert err["error"]["exit_code"] == 2


def test_ensemble_outputs(tmp_path):
    cfg = tmp_path / "ens.cfg"
    cfg.write_text("[ensemble]\nn_instances = 3\nT_list_us = 10\ndt_us = 0.2\n"
                   "master_seed = 2\n")
    out = tmp_path / "ens"
    run("ensemble", "--config", str(cfg), "--threads", "2", "--out", str(out))
    rows = (out / "ensemble.csv").read_text().splitlines()
    assert rows[2].startswith("instance,")
    assert len(rows) == 3 + 3 * 3  # headers + 3 instances x 3 methods
    assert (out / "ensemble_summary.svg").read_text().startswith("<svg")


if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", __file__]))
