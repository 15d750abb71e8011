import json
from pathlib import Path

from waterproof_lite.doc import (
    Code, InputArea, WaterDoc, extract_sheet, parse_document,
)
from waterproof_lite.grade import grade, report_to_json, report_to_text
from waterproof_lite.kernel import EMPTY_ENV

DATA = Path(__file__).parent / "data"
MASTER = parse_document((DATA / "master.wpd").read_text(encoding="utf-8"))


def replace_area(doc, index, blocks):
    out = []
    seen = 0
    for b in doc.blocks:
        if isinstance(b, InputArea):
            if seen == index:
                b = InputArea(blocks)
            seen += 1
        out.append(b)
    return WaterDoc(doc.version, doc.preamble, tuple(out))


def test_perfect_submission_scores_full_marks():
    report = grade(MASTER, MASTER, EMPTY_ENV)
    assert (report.total, report.max_points) == (3, 3)
    assert not report.tampered
    assert [e.verdict for e in report.per_exercise] == ["correct"] * 3
    assert [e.exercise_id for e in report.per_exercise] == \
        ["exercise-1", "exercise-2", "exercise-3"]


def test_emptied_area_is_incomplete():
    submission = replace_area(MASTER, 1, (Code(""),))
    report = grade(MASTER, submission, EMPTY_ENV)
    assert report.total == 2
    assert report.per_exercise[1].verdict == "incomplete"
    assert report.per_exercise[0].verdict == "correct"


def test_wrong_proof_is_incorrect():
    submission = replace_area(
        MASTER, 1, (Code("Take x : ℝ. We conclude that (x > 0).\nQed.\n"),))
    report = grade(MASTER, submission, EMPTY_ENV)
    assert report.per_exercise[1].verdict == "incorrect"
    assert report.per_exercise[1].first_diagnostic


def test_tampered_lemma_statement_zeroes_the_report():
    text = (DATA / "master.wpd").read_text(encoding="utf-8")
    submission = parse_document(text.replace("x > 1 => x > 0",
                                             "x > 1 => x > -1"))
    report = grade(MASTER, submission, EMPTY_ENV)
    assert report.tampered
    assert report.total == 0
    assert all(e.verdict == "tampered" for e in report.per_exercise)
    assert "content outside input areas differs" in \
        report.per_exercise[0].first_diagnostic


def test_sheet_submission_grades_zero_but_clean():
    sheet = extract_sheet(MASTER)
    report = grade(MASTER, sheet, EMPTY_ENV)
    assert report.total == 0
    assert not report.tampered
    assert all(e.verdict in ("incomplete", "incorrect")
               for e in report.per_exercise)


def test_json_report_is_stable_and_camel_cased():
    report = grade(MASTER, MASTER, EMPTY_ENV)
    text = report_to_json(report)
    assert text == report_to_json(report)  # byte-stable
    payload = json.loads(text)
    assert set(payload) == {"checkerVersion", "maxPoints", "total",
                            "tampered", "perExercise"}
    assert payload["perExercise"][0] == {
        "exerciseId": "exercise-1", "verdict": "correct",
        "firstDiagnostic": None}
    # keys are sorted for diff-friendly storage
    assert list(payload) == sorted(payload)


def test_text_report_format():
    submission = replace_area(MASTER, 1, (Code(""),))
    text = report_to_text(grade(MASTER, submission, EMPTY_ENV))
    lines = text.splitlines()
    assert lines[0] == "score: 2/3"
    assert lines[1].startswith("  exercise-1: correct")
    assert "exercise-2: incomplete" in lines[2]
