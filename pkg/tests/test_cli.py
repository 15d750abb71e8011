import json
from pathlib import Path

import pytest

from waterproof_lite.cli import main

DATA = Path(__file__).parent / "data"
MASTER = DATA / "master.wpd"
LIB = DATA / "course.wpl"


def test_check_prints_verdicts_and_exits_zero(capsys):
    assert main(["check", str(MASTER), "--library", str(LIB)]) == 0
    out = capsys.readouterr().out
    assert "near_four: correct" in out
    assert "input area 3: green" in out


def test_check_reports_diagnostics_without_failing(tmp_path, capsys):
    bad = tmp_path / "bad.wpd"
    bad.write_text(MASTER.read_text().replace("Qed.", "", 1),
                   encoding="utf-8")
    assert main(["check", str(bad)]) == 0
    assert "incomplete" in capsys.readouterr().out


def test_grade_writes_json_and_uses_exit_codes(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(["grade", "--original", str(MASTER),
                 "--submission", str(MASTER), "--library", str(LIB),
                 "--json", str(report_path)])
    assert code == 0
    assert "score: 3/3" in capsys.readouterr().out
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    assert payload["total"] == 3

    tampered = tmp_path / "tampered.wpd"
    tampered.write_text(MASTER.read_text().replace("x > 1", "x > -1"),
                        encoding="utf-8")
    code = main(["grade", "--original", str(MASTER),
                 "--submission", str(tampered), "--library", str(LIB)])
    assert code == 2


def test_sheet_strips_input_areas(tmp_path):
    out = tmp_path / "sheet.wpd"
    assert main(["sheet", str(MASTER), "-o", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert "Choose a :=" not in text
    assert text.count("<input-area>") == 3
    # sheet of a sheet is identical
    out2 = tmp_path / "sheet2.wpd"
    assert main(["sheet", str(out), "-o", str(out2)]) == 0
    assert out2.read_text(encoding="utf-8") == text


def test_normalize_prints_canonical_sentences(tmp_path, capsys):
    script = tmp_path / "proof.wps"
    script.write_text("Take  eps:ℝ. Assume that(eps>0).", encoding="utf-8")
    assert main(["normalize", str(script)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["Take eps : ℝ.", "Assume that (eps > 0)."]


def test_io_and_parse_failures_exit_one(tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.wpd")]) == 1
    bad = tmp_path / "bad.wpd"
    bad.write_text("not a document", encoding="utf-8")
    assert main(["check", str(bad)]) == 1
    assert "wp: error:" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("wp ")
