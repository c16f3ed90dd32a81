from __future__ import annotations

import json
import subprocess
import sys

from monopath.cli import main
from monopath.report import verify_report


def test_list(capsys):
    assert main(["--list"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 14 and lines[0].startswith("quadratic-identity")


def test_json_to_stdout(capsys):
    assert main(["--scenario", "ni-gap", "--trunc", "6"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["N"] == 6 and verify_report(data) == []


def test_markdown_and_out(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert main(["--scenario", "br-failure", "--format", "markdown", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text(encoding="utf-8").startswith("# Report: br-failure")


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scenario = sum-ni\nalpha = 2;1\ntrunc = 3\n", encoding="utf-8")
    assert main(["--config", str(cfg), "--trunc", "4"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["alpha"] == "2;1" and data["config"]["N"] == 4


def test_config_errors_exit_2(tmp_path, capsys):
    assert main(["--scenario", "nope"]) == 2
    assert main([]) == 2
    assert main(["--config", str(tmp_path / "missing.cfg")]) == 2
    assert "monopath:" in capsys.readouterr().err


def test_failed_report_exits_1(capsys):
    assert main(["--scenario", "bc-simons-a4", "--alpha", "2;1"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["errors"][0]["type"] == "PreconditionError"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monopath", "--scenario", "adjoint-nonmonotone"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["failed"] == 0
