from pathlib import Path

from waterproof_lite.auto import DEFAULT_BUDGET
from waterproof_lite.checking import check_document
from waterproof_lite.doc import parse_document
from waterproof_lite.kernel import EMPTY_ENV

DATA = Path(__file__).parent / "data"
MASTER = (DATA / "master.wpd").read_text(encoding="utf-8")


def check_text(text, env=EMPTY_ENV, **kw):
    return check_document(parse_document(text), env, **kw)


def test_master_document_is_all_green():
    result = check_text(MASTER)
    assert [u.verdict for u in result.units] == ["correct"] * 3
    assert result.area_status == ("green", "green", "green")
    assert all(r.status == "ok" for r in result.sentences)


def test_units_are_independent_admitted_semantics():
    text = (
        "#wp 1\n```proof\n"
        "Lemma broken : 1 = 2.\n"
        "We conclude that (1 = 2).\n"
        "Qed.\n"
        "Lemma fine : 1 > 0.\n"
        "We conclude that (1 > 0).\n"
        "Qed.\n```\n")
    result = check_text(text)
    assert [u.verdict for u in result.units] == ["incorrect", "correct"]
    # sentences after the failure in the same unit are skipped
    statuses = [r.status for r in result.sentences]
    assert statuses == ["ok", "error", "skipped", "ok", "ok", "ok"]


def test_missing_qed_is_incomplete():
    text = "#wp 1\n```proof\nLemma open : 1 > 0.\nWe conclude that (1 > 0).\n```\n"
    result = check_text(text)
    assert result.units[0].verdict == "incomplete"
    # premature Qed gets the dedicated diagnostic and is also incomplete
    text = "#wp 1\n```proof\nLemma open : 1 > 0.\nQed.\n```\n"
    result = check_text(text)
    assert result.units[0].verdict == "incomplete"
    assert result.units[0].first_diagnostic == "Proof is not finished."


def test_bad_header_statement_marks_unit_incorrect():
    text = "#wp 1\n```proof\nLemma bad : x > 0.\nQed.\n```\n"
    result = check_text(text)
    assert result.units[0].verdict == "incorrect"
    assert "free variables" in result.units[0].first_diagnostic


def test_stray_sentences_before_any_header_are_errors():
    text = "#wp 1\n```proof\nTake x : ℝ.\n```\n"
    result = check_text(text)
    assert result.units == ()
    assert result.sentences[0].status == "error"
    assert "must start with `Lemma" in result.sentences[0].diagnostic


def test_parse_errors_are_localized_to_document_lines():
    text = ("#wp 1\nSome prose.\n```proof\n"
            "Lemma fine : 1 > 0.\n"
            "Mystery incantation.\n"
            "Qed.\n```\n")
    result = check_text(text)
    bad = [r for r in result.sentences if r.status == "error"]
    assert bad and bad[0].span.start_line == 5
    assert "unknown proof sentence" in bad[0].diagnostic


def test_area_goes_red_when_its_unit_fails_elsewhere():
    # header outside the area, broken conclusion inside it
    text = (
        "#wp 1\n```proof\nLemma l : 1 > 0.\n```\n"
        "<input-area>\n```proof\nWe conclude that (0 > 1).\nQed.\n```\n"
        "</input-area>\n")
    result = check_text(text)
    assert result.area_status == ("red",)
    # and green when it succeeds
    good = text.replace("(0 > 1)", "(1 > 0)")
    assert check_text(good).area_status == ("green",)


def test_hint_code_is_not_checked():
    text = (
        "#wp 1\n```proof\nLemma l : 1 > 0.\nWe conclude that (1 > 0).\nQed.\n```\n"
        '<hint title="h">\n```proof\nTotally broken nonsense.\n```\n</hint>\n')
    result = check_text(text)
    assert result.units[0].verdict == "correct"
    assert all(r.status == "ok" for r in result.sentences)


def test_timeout_produces_dedicated_diagnostic():
    result = check_text(MASTER, unit_timeout=0.0)
    assert all(u.verdict == "incorrect" for u in result.units)
    assert all(u.first_diagnostic == "checking timed out"
               for u in result.units)


def test_goals_after_reports_wrapped_goals_as_instructions():
    text = (
        "#wp 1\n```proof\nLemma l : 1 > 0.\n"
        "Either (1 < 2) or (1 >= 2).\n```\n")
    result = check_text(text)
    after = result.sentences[1].goals_after
    assert len(after) == 2
    assert after[0].startswith("Add the following line to the proof:")
