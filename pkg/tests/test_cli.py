"""End-to-end command-line checks: files written, exit codes, determinism."""

import json
import shutil
import subprocess
import sys

import pytest

import curvkit as ck
from curvkit.cli import run


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.edges"
    path.write_text("# toy triangle\n10 20\n20 30\n10 30\n")
    return path


@pytest.fixture
def p5_file(tmp_path):
    path = tmp_path / "p5.edges"
    path.write_text("\n".join(f"{i} {i + 1}" for i in range(4)) + "\n")
    return path


def test_curvature_outputs(k3_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["curvature", "--edges", str(k3_file), "--kind", "bfc", "--out", str(out)]) == 0
    assert "3 edges" in capsys.readouterr().out
    lines = (out / "curvature.csv").read_text().splitlines()
    assert lines[0] == "u,v,curvature"
    assert lines[1] == "0,1,1.500000"  # K3 edge: 0 + 1 + 1/2
    id_lines = (out / "id_map.csv").read_text().splitlines()
    assert id_lines == ["compact_id,original_id", "0,10", "1,20", "2,30"]


def test_rewire_outputs(p5_file, tmp_path):
    out = tmp_path / "out"
    code = run(["rewire", "--edges", str(p5_file), "--kind", "bfc",
                "--max-iter", "3", "--tau", "5", "--seed", "0", "--out", str(out)])
    assert code == 0
    rewired, _ = ck.load_edge_list(out / "rewired_edges.txt")
    trace = ck.read_trace(out / "trace.jsonl")
    assert len(trace) == 3
    original, _ = ck.load_edge_list(p5_file)
    assert ck.replay_trace(original, trace) == rewired


def test_rewire_kind_none_is_identity(p5_file, tmp_path):
    out = tmp_path / "out"
    assert run(["rewire", "--edges", str(p5_file), "--kind", "none", "--out", str(out)]) == 0
    rewired, _ = ck.load_edge_list(out / "rewired_edges.txt")
    original, _ = ck.load_edge_list(p5_file)
    assert rewired == original
    assert (out / "trace.jsonl").read_text() == ""


def test_rewire_requires_seed(p5_file, tmp_path, capsys):
    code = run(["rewire", "--edges", str(p5_file), "--kind", "bfc",
                "--max-iter", "2", "--tau", "1", "--out", str(tmp_path / "o")])
    assert code == 1
    assert "--seed is required" in capsys.readouterr().err


def test_audit_outputs_and_determinism(p5_file, tmp_path):
    argv_tail = ["--edges", str(p5_file), "--kind", "bfc", "--max-iter", "4",
                 "--tau", "2", "--seed", "7"]
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run(["audit", *argv_tail, "--out", str(out_a)]) == 0
    assert run(["audit", *argv_tail, "--out", str(out_b)]) == 0
    for name in ("summary.json", "scatter.csv", "id_map.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
    summary = json.loads((out_a / "summary.json").read_text())
    assert summary["dataset"] == "p5" and summary["kind"] == "bfc"
    assert summary["edges_rewired"] == 4
    assert set(summary["cond2"]) == {"count", "percent"}


def test_audit_respects_curvature_alias(p5_file, tmp_path):
    out = tmp_path / "out"
    code = run(["audit", "--edges", str(p5_file), "--curvature", "jlc", "--max-iter", "1",
                "--tau", "1", "--seed", "0", "--out", str(out)])
    assert code == 0
    assert json.loads((out / "summary.json").read_text())["kind"] == "jlc"


def test_verify_bound_double_star(tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["verify-bound", "--double-star", "25", "--out", str(out)]) == 0
    assert "pass=true" in capsys.readouterr().out
    report = json.loads((out / "report.json").read_text())
    assert report["pass"] is True
    assert report["q_size"] == 24
    assert report["one_over_delta"] == pytest.approx(6.25)


def test_verify_bound_from_file(tmp_path):
    edges = tmp_path / "ds.edges"
    ck.save_edge_list(ck.double_star(17), edges)
    out = tmp_path / "out"
    assert run(["verify-bound", "--edges", str(edges), "--edge", "0", "1",
                "--out", str(out)]) == 0
    assert json.loads((out / "report.json").read_text())["pass"] is True


def test_verify_bound_source_exclusivity(tmp_path, capsys):
    code = run(["verify-bound", "--out", str(tmp_path / "o")])
    assert code == 1
    assert "exactly one of" in capsys.readouterr().err


def test_verify_bound_condition_failure_is_input_error(k3_file, tmp_path, capsys):
    code = run(["verify-bound", "--edges", str(k3_file), "--edge", "0", "1",
                "--out", str(tmp_path / "o")])
    assert code == 1
    assert "hypotheses" in capsys.readouterr().err


def test_stats_samples_and_graph(p5_file, tmp_path):
    samples = tmp_path / "sweep.csv"
    samples.write_text("config_id,accuracy\n" + "".join(f"{i},{i + 1}\n" for i in range(100)))
    labels = tmp_path / "labels.txt"
    labels.write_text("0 1\n1 1\n2 1\n3 2\n4 2\n")
    out = tmp_path / "out"
    code = run(["stats", "--samples", str(samples), "--checkpoints", "0.5,1.0",
                "--edges", str(p5_file), "--labels", str(labels), "--out", str(out)])
    assert code == 0
    blob = json.loads((out / "stats.json").read_text())
    assert blob["top_fraction"]["mean"] == pytest.approx(95.5)
    assert blob["top_fraction"]["count"] == 10
    assert blob["spectral_gap"] == pytest.approx(ck.spectral_gap(ck.path_graph(5)))
    # labels 1,1,1,2,2 on a path: fractions 1, 1, 1/2, 1/2, 1
    assert blob["homophily"] == pytest.approx(0.8)
    sat = (out / "saturation.csv").read_text().splitlines()
    assert len(sat) == 3 and sat[1].split(",")[1] == "50"


def test_stats_requires_some_input(tmp_path, capsys):
    assert run(["stats", "--out", str(tmp_path / "o")]) == 1
    assert "needs --samples" in capsys.readouterr().err


def test_stats_id_map_translates_label_lookup(tmp_path):
    # extract the LCC (compact ids), then compute homophily against labels
    # that still use the raw file's vocabulary
    raw = tmp_path / "raw.edges"
    raw.write_text("100 101\n101 102\n102 103\n103 100\n900 901\n")
    labels = tmp_path / "labels.txt"
    labels.write_text("100 0\n101 1\n102 0\n103 1\n900 7\n901 7\n")
    lcc_out = tmp_path / "lcc"
    assert run(["lcc", "--edges", str(raw), "--out", str(lcc_out)]) == 0
    out = tmp_path / "st"
    code = run(["stats", "--edges", str(lcc_out / "lcc_edges.txt"),
                "--labels", str(labels), "--id-map", str(lcc_out / "id_map.csv"),
                "--out", str(out)])
    assert code == 0
    blob = json.loads((out / "stats.json").read_text())
    assert blob["homophily"] == 0.0  # alternating labels on the 4-cycle
    # without the map the compact ids 0..3 have no labels
    assert run(["stats", "--edges", str(lcc_out / "lcc_edges.txt"),
                "--labels", str(labels), "--out", str(tmp_path / "st2")]) == 1


def test_lcc_composes_id_maps(tmp_path):
    edges = tmp_path / "two.edges"
    edges.write_text("100 200\n5 6\n6 7\n")
    out = tmp_path / "out"
    assert run(["lcc", "--edges", str(edges), "--out", str(out)]) == 0
    assert (out / "lcc_edges.txt").read_text() == "0 1\n1 2\n"
    id_lines = (out / "id_map.csv").read_text().splitlines()
    assert id_lines == ["compact_id,original_id", "0,5", "1,6", "2,7"]


def test_unknown_flag_exits_one(capsys):
    assert run(["curvature", "--bogus"]) == 1
    err = capsys.readouterr().err
    assert "usage:" in err and "error:" in err


def test_missing_file_exits_one(tmp_path, capsys):
    code = run(["curvature", "--edges", str(tmp_path / "nope.edges"),
                "--kind", "bfc", "--out", str(tmp_path / "o")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "curvature" in capsys.readouterr().out


def test_malformed_edge_file_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n2\n")
    code = run(["curvature", "--edges", str(bad), "--kind", "bfc", "--out", str(tmp_path / "o")])
    assert code == 1
    assert "bad.edges:2:" in capsys.readouterr().err


def test_thread_env_cap(monkeypatch, k3_file, tmp_path):
    monkeypatch.setenv("CURVKIT_THREADS", "1")
    out = tmp_path / "out"
    assert run(["curvature", "--edges", str(k3_file), "--kind", "afc4", "--out", str(out)]) == 0
    assert (out / "curvature.csv").read_text().count("\n") == 4


def test_console_script_installed(tmp_path):
    exe = shutil.which("curvkit")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "verify-bound", "--double-star", "20",
                           "--out", str(tmp_path / "o")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pass=true" in proc.stdout
