import pathlib
import subprocess
import sys

from helpers_csv import logistic_csv

CLI = [sys.executable, "-m", "rainbowplots.cli"]


def run(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


def test_render_ok(tmp_path):
    csv = tmp_path / "s.csv"
    csv.write_text(logistic_csv())
    out = tmp_path / "fig.svg"
    proc = run(str(csv), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert f"wrote {out}" in proc.stdout
    assert "0.5-crossing at multiplier" in proc.stdout
    assert out.exists() and out.stat().st_size > 0


def test_measure_flag(tmp_path):
    csv = tmp_path / "s.csv"
    csv.write_text(logistic_csv(sizes=(100,)))
    out = tmp_path / "fig.png"
    proc = run(str(csv), "--measure", "rainbow_rate", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes()[:4] == b"\x89PNG"


def test_malformed_header_exit_1(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("m,n,wrong\n1,2,3\n")
    proc = run(str(csv), "--out", str(tmp_path / "x.svg"))
    assert proc.returncode == 1
    assert "error:" in proc.stderr
    assert "bad.csv:1:" in proc.stderr


def test_missing_file_exit_1(tmp_path):
    proc = run(str(tmp_path / "nope.csv"), "--out", str(tmp_path / "x.svg"))
    assert proc.returncode == 1
    assert "error:" in proc.stderr


def test_bad_measure_exit_2(tmp_path):
    csv = tmp_path / "s.csv"
    csv.write_text(logistic_csv(sizes=(100,)))
    proc = run(str(csv), "--measure", "nope")
    assert proc.returncode == 2


def test_no_args_exit_2():
    assert run().returncode == 2
