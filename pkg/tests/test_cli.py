from __future__ import annotations

import subprocess
import sys

import pytest

from amalgamkit.cli import EXIT_FAIL, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from amalgamkit.report import parse_report


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("argv", [["bogus"], ["complete"], ["complete", "--target", "m23"],
                                  ["structure", "--frobnicate"], ["graph", "--completion", "a16"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == EXIT_USAGE


def test_nonpositive_jobs(capsys):
    assert main(["structure", "--jobs", "0"]) == EXIT_USAGE


def test_complete_m24_report_and_figure(tmp_path, capsys):
    out = tmp_path / "rep" / "m24.jsonl"
    code = main(["complete", "--target", "m24", "--cache", str(tmp_path / "c"), "--out", str(out),
                 "--strategy", "both"])
    assert code == EXIT_OK
    rows, summary = parse_report(out.read_text())
    got = {r["check"]: r["actual"] for r in rows}
    assert got["index"] == 11385 and got["image.order"] == 244823040
    assert summary["failed"] == 0 and summary["exit_code"] == 0
    assert (out.parent / "m24.trace.png").stat().st_size > 0


def test_resource_exhaustion(tmp_path, capsys):
    code, text = run(capsys, "complete", "--target", "m24", "--max-cosets", "500", "--cache", str(tmp_path))
    assert code == EXIT_RESOURCE
    _, summary = parse_report(text)
    assert summary["exit_code"] == 3 and "EnumerationExhausted" in summary["error"]


def test_env_cache_overrides_flag(tmp_path, capsys, monkeypatch):
    env = tmp_path / "env"
    monkeypatch.setenv("AMALGAM_CACHE", str(env))
    code, _ = run(capsys, "complete", "--target", "b", "--cache", str(tmp_path / "flag"))
    assert code == EXIT_OK
    assert list(env.glob("*.ctb")) and not (tmp_path / "flag").exists()


def test_warm_cache_report_is_byte_stable(tmp_path, capsys):
    args = ["complete", "--target", "a16", "--cache", str(tmp_path), "--no-timing"]
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a[0] == b[0] == EXIT_OK
    assert a[1] == b[1]


def test_amalgams_byte_stable(capsys):
    a = run(capsys, "amalgams", "--no-timing")
    b = run(capsys, "amalgams", "--no-timing", "--jobs", "2")
    assert a[0] == EXIT_OK and a[1] == b[1]


def test_graph_he_needs_deep(capsys):
    code, text = run(capsys, "graph", "--completion", "he")
    rows, summary = parse_report(text)
    assert code == EXIT_OK and rows[0]["status"] == "skipped"


def test_graph_m24_with_edges(tmp_path, capsys):
    out = tmp_path / "g.jsonl"
    code = main(["graph", "--completion", "m24", "--cache", str(tmp_path), "--out", str(out),
                 "--edges", str(tmp_path / "edges.txt")])
    assert code == EXIT_OK
    assert (tmp_path / "g.graph.m24.towers.png").exists()
    assert len((tmp_path / "edges.txt").read_text().splitlines()) == 79695 + 1


def test_failed_check_exit_code(monkeypatch, capsys):
    from amalgamkit import cli
    from amalgamkit.report import Suite

    def broken(name):
        s = Suite("broken")
        s.expect("one", 1, lambda: 2)
        return s

    monkeypatch.setattr(cli, "_job_structure", broken)
    assert main(["structure"]) == EXIT_FAIL


def test_console_script_version():
    r = subprocess.run([sys.executable, "-m", "amalgamkit", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "0.1.0"
