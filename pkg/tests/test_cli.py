"""End-to-end checks for the command line interface.

Everything runs in-process through main(argv). Output capture goes through
explicit --out files or redirect_stdout, so the suite works with -s.
"""

import contextlib
import io
import json
import os

import numpy as np
import pytest

from focklift.cli import EXIT_CERTIFICATION, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from focklift.linalg import haar_random_unitary


def run(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def write_config(path, **overrides):
    cfg = {"mode": "two_mode", "modes": 2, "restarts": 3, "max_iterations": 120,
           "leakage_tolerance": 1e-10, "penalty_weight": 1e5,
           "certification_threshold": 1e-6, "seed": 7}
    cfg.update(overrides)
    path.write_text(json.dumps(cfg))
    return str(path)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_algebra_passes():
    code, out = run("verify", "algebra")
    assert code == EXIT_OK
    assert "[PASS]" in out
    assert "[FAIL]" not in out


def test_verify_rejects_unknown_suite():
    code, _ = run("verify", "nonsense")
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_writes_csv_and_summary(tmp_path):
    out = tmp_path / "sweep.csv"
    code, _ = run("sweep", "--grid", "0:1.5707963:9", "--samples", "2",
                  "--seed", "3", "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "epsilon,leakage,entangling_measure"
    assert len(lines) == 10
    summary = json.loads((tmp_path / "sweep.summary.json").read_text())
    assert summary["rows"] == 9
    assert summary["anti_correlation"] is True
    # endpoints sit on the decoupling set
    first = lines[1].split(",")
    assert float(first[1]) < 1e-12


def test_sweep_requires_out(tmp_path):
    code, _ = run("sweep", "--grid", "0:1:3")
    assert code == EXIT_USAGE


def test_sweep_rejects_empty_grid(tmp_path):
    code, _ = run("sweep", "--grid", "", "--out", str(tmp_path / "x.csv"))
    assert code == EXIT_USAGE


def test_sweep_comma_grid(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = run("sweep", "--grid", "0.0,0.5,1.0", "--samples", "1",
                  "--seed", "1", "--out", str(out))
    assert code == EXIT_OK
    assert len(out.read_text().strip().splitlines()) == 4


# ---------------------------------------------------------------------------
# nogo
# ---------------------------------------------------------------------------

def test_nogo_two_mode_certifies(tmp_path):
    cfg = write_config(tmp_path / "cfg.json")
    out = tmp_path / "result.json"
    code, _ = run("nogo", "--config", cfg, "--out", str(out), "--no-timestamps")
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert doc["certified"] is True
    assert doc["result"]["best_entangling_measure"] < 1e-6
    assert "started" not in doc["manifest"]


def test_nogo_unconstrained_reports_no_verdict(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", penalty_weight=0.0, seed=51,
                       max_iterations=300, restarts=6)
    out = tmp_path / "result.json"
    code, _ = run("nogo", "--config", cfg, "--out", str(out))
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["certified"] is None
    assert doc["result"]["best_entangling_measure"] > 0.1


def test_nogo_certification_failure_exits_three(tmp_path):
    # an impossible threshold forces the certificate to fail honestly
    cfg = write_config(tmp_path / "cfg.json", certification_threshold=1e-30,
                       leakage_tolerance=1e-3, penalty_weight=10.0)
    code, _ = run("nogo", "--config", cfg, "--out", str(tmp_path / "r.json"))
    assert code == EXIT_CERTIFICATION


def test_nogo_seed_flag_overrides_config(tmp_path):
    cfg = write_config(tmp_path / "cfg.json")
    out1 = tmp_path / "a.json"
    run("nogo", "--config", cfg, "--seed", "99", "--out", str(out1))
    doc = json.loads(out1.read_text())
    assert doc["manifest"]["seed"] == 99
    assert doc["manifest"]["config"]["seed"] == 99


def test_nogo_ancilla_mode(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", mode="ancilla", modes=3,
                       ancilla_photons=0, restarts=3, seed=55)
    out = tmp_path / "anc.json"
    code, _ = run("nogo", "--config", cfg, "--out", str(out))
    assert code == EXIT_OK
    assert json.loads(out.read_text())["certified"] is True


def test_nogo_rejects_bad_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("nogo", "--config", str(bad))[0] == EXIT_USAGE

    assert run("nogo", "--config", str(tmp_path / "missing.json"))[0] == EXIT_USAGE

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"mode": "two_mode", "modes": 1}))
    assert run("nogo", "--config", str(wrong))[0] == EXIT_USAGE


def test_nogo_packaged_config_resolves(tmp_path):
    # bare name falls back to the packaged configuration directory
    out = tmp_path / "m3.json"
    code, _ = run("nogo", "--config", "m3", "--out", str(out), "--jobs", "2")
    assert code == EXIT_OK
    assert json.loads(out.read_text())["certified"] is True


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def test_bench_produces_rows(tmp_path):
    out = tmp_path / "bench.csv"
    code, _ = run("bench", "--max-n", "6", "--repeats", "2", "--seed", "5",
                  "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,algorithm,mean_ns,std_ns"
    algs = {line.split(",")[1] for line in lines[1:]}
    assert algs == {"naive", "ryser"}


def test_bench_json_format(tmp_path):
    out = tmp_path / "bench.json"
    code, _ = run("bench", "--max-n", "4", "--repeats", "1", "--seed", "5",
                  "--format", "json", "--out", str(out))
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    assert all(set(r) >= {"n", "algorithm", "mean_ns"} for r in doc["rows"])


def test_bench_rejects_huge_n():
    assert run("bench", "--max-n", "30")[0] == EXIT_USAGE


# ---------------------------------------------------------------------------
# lift
# ---------------------------------------------------------------------------

def test_lift_haar_round_trip(tmp_path):
    out = tmp_path / "lift.json"
    code, _ = run("lift", "--haar", "3", "--photons", "2", "--seed", "8",
                  "--out", str(out))
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    lifted = doc["lifted"]
    assert lifted["modes"] == 3
    assert lifted["photons"] == 2
    assert len(lifted["basis"]) == 6
    mat = np.array([[complex(re, im) for re, im in row] for row in lifted["matrix"]])
    assert np.max(np.abs(mat.conj().T @ mat - np.eye(6))) < 1e-10


def test_lift_reads_matrix_file(tmp_path):
    rng = np.random.default_rng(9)
    v = haar_random_unitary(2, rng)
    src = tmp_path / "v.json"
    src.write_text(json.dumps(
        {"matrix": [[[z.real, z.imag] for z in row] for row in v]}))
    out = tmp_path / "lift.csv"
    code, _ = run("lift", "--input", str(src), "--photons", "1",
                  "--format", "csv", "--out", str(out))
    assert code == EXIT_OK
    # single-photon lift is the matrix itself; CSV is flat re,im pairs
    rows = out.read_text().strip().splitlines()
    got = np.array([[float(x) for x in r.split(",")] for r in rows])
    flat = got[:, 0::2] + 1j * got[:, 1::2]
    assert np.max(np.abs(flat - v)) < 1e-15


def test_lift_usage_errors(tmp_path):
    assert run("lift", "--photons", "2")[0] == EXIT_USAGE
    assert run("lift", "--haar", "2", "--input", "x.json", "--photons", "1")[0] == EXIT_USAGE
    assert run("lift", "--haar", "2", "--photons", "0")[0] == EXIT_USAGE

    src = tmp_path / "bad.json"
    src.write_text(json.dumps({"matrix": [[1, 2], [3, 4]]}))
    assert run("lift", "--input", str(src), "--photons", "1")[0] == EXIT_USAGE


# ---------------------------------------------------------------------------
# netlist
# ---------------------------------------------------------------------------

def test_netlist_decomposes_haar(tmp_path):
    out = tmp_path / "net.json"
    code, _ = run("netlist", "--haar", "4", "--seed", "10", "--out", str(out))
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["dim"] == 4
    assert doc["element_count"] <= 10
    assert doc["parameter_count"] <= 16
    assert doc["max_recompose_error"] < 1e-10
    assert all(e["kind"] in ("phase-shifter", "beam-splitter") for e in doc["elements"])


def test_netlist_is_json_only(tmp_path):
    code, _ = run("netlist", "--haar", "3", "--format", "csv",
                  "--out", str(tmp_path / "n.csv"))
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def test_unwritable_out_exits_io_and_leaves_no_partial(tmp_path):
    target_dir = tmp_path / "missing"
    out = target_dir / "x.json"
    code, _ = run("lift", "--haar", "2", "--photons", "1", "--out", str(out))
    assert code == EXIT_IO
    assert not target_dir.exists()
    # atomic writes never leave temp droppings next to the target
    assert list(tmp_path.iterdir()) == []


def test_stdout_fallback_without_out():
    code, out = run("lift", "--haar", "2", "--photons", "1", "--seed", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["lifted"]["modes"] == 2


def test_unknown_subcommand_is_usage_error():
    assert run("frobnicate")[0] == EXIT_USAGE


def test_manifest_records_outputs(tmp_path):
    out = tmp_path / "r.json"
    cfg = write_config(tmp_path / "cfg.json")
    run("nogo", "--config", cfg, "--out", str(out), "--no-timestamps")
    doc = json.loads(out.read_text())
    manifest = doc["manifest"]
    assert manifest["command"] == "nogo"
    assert str(out) in manifest["outputs"]
    assert manifest["seed"] == 7


def test_determinism_matches_byte_for_byte(tmp_path):
    cfg = write_config(tmp_path / "cfg.json", restarts=2, max_iterations=80)
    out = tmp_path / "same.json"
    run("nogo", "--config", cfg, "--out", str(out), "--no-timestamps")
    first = out.read_bytes()
    run("nogo", "--config", cfg, "--out", str(out), "--no-timestamps")
    assert out.read_bytes() == first
