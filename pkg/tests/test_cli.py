from __future__ import annotations

import json
import shutil
import subprocess
import sys

from pcgroups.cli import EXIT_ERROR, EXIT_OK, EXIT_SKIPPED, EXIT_VIOLATIONS, main
from pcgroups.corpus import DATA_DIR, read_report


def test_info_J(capsys):
    assert main(["info", "J"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "order        3^4 = 81" in out
    assert "level 1      power=true omega=true index=false" in out
    assert "regular      false" in out


def test_info_family_params(capsys):
    assert main(["info", "abelian", "2", "1", "--p", "3", "--json"]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec["log_order"] == 3 and rec["is_powerful"] is True


def test_check_file(capsys, tmp_path):
    out_path = tmp_path / "r.jsonl"
    code = main(["check", str(DATA_DIR / "fixtures" / "64-31.pcp"), "--out", str(out_path), "--no-sections"])
    assert code == EXIT_OK
    assert "power=false omega=false index=false" in capsys.readouterr().out
    rows, _ = read_report(out_path)
    assert rows[0]["group_id"] == "file:64-31"
    assert rows[0]["p1"] == "skipped"


def test_check_errors(capsys, tmp_path):
    bad = tmp_path / "bad.pcp"
    bad.write_text("p 3\nngens 3\npower 1 : 2^1\ncomm 2 1 : 3^1\n")
    assert main(["check", str(bad)]) == EXIT_ERROR
    assert "Inconsistent" in capsys.readouterr().err
    bad.write_text("p 4\nngens 1\n")
    assert main(["check", str(bad)]) == EXIT_ERROR
    assert main(["check", str(tmp_path / "missing.pcp")]) == EXIT_ERROR
    assert main(["info", "nonsense"]) == EXIT_ERROR


def _fixture_dir(tmp_path, manifest: str):
    d = tmp_path / "fixtures"
    d.mkdir()
    shutil.copy(DATA_DIR / "fixtures" / "81-10.pcp", d / "81-10.pcp")
    (d / "MANIFEST.txt").write_text(manifest)
    return d


def test_verify_exit_codes(capsys, tmp_path):
    good = _fixture_dir(tmp_path, "81-10 m_1=true cond_index_1=false\n")
    assert main(["verify", "manifest", "--corpus", str(good)]) == EXIT_OK
    (good / "MANIFEST.txt").write_text("81-10 class=2\n")
    assert main(["verify", "manifest", "--corpus", str(good)]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert "FAIL" in out and "expected 2, computed 3" in out
    assert main(["verify", "p2-remark", "--corpus", str(good)]) == EXIT_SKIPPED
    (good / "MANIFEST.txt").write_text("81-11 class=2\n")
    assert main(["verify", "manifest", "--corpus", str(good)]) == EXIT_ERROR
    assert "listed in manifest but no file" in capsys.readouterr().err


def test_verify_writes_report(tmp_path):
    out_path, csv_path = tmp_path / "v.jsonl", tmp_path / "v.csv"
    code = main(
        ["verify", "uniqueness-81", "--corpus", str(DATA_DIR / "fixtures"), "--out", str(out_path), "--csv", str(csv_path)]
    )
    assert code == EXIT_OK
    rows, summary = read_report(out_path)
    assert rows[0]["details"]["witnesses"] == ["fixture:81-10"]
    assert summary["status"] == {"uniqueness-81": "pass"}
    assert csv_path.read_text().startswith("checked,")


def test_oracle_command(capsys, tmp_path):
    d = _fixture_dir(tmp_path, "")
    assert main(["oracle", "--corpus", str(d), "--with-builtins", "--seed", "2"]) == EXIT_OK
    assert "oracle" in capsys.readouterr().out


def test_module_entry_point_help():
    res = subprocess.run([sys.executable, "-m", "pcgroups", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for cmd in ("check", "info", "verify", "oracle"):
        assert cmd in res.stdout
    res = subprocess.run([sys.executable, "-m", "pcgroups", "verify", "--help"], capture_output=True, text=True)
    assert "--corpus" in res.stdout and "--seed" in res.stdout
