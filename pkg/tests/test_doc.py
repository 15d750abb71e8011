import pytest
from hypothesis import given, settings

import strategies as S
from waterproof_lite.doc import (
    Code, DocError, Hint, InputArea, NestedArea, TamperReport, Text,
    UnbalancedMarker, WaterDoc, extract_sheet, parse_document, render,
    splice_submission,
)

SAMPLE = """\
#wp 1
#library course.wpl
# Sheet 1

Prove the warm-up.

```proof
Lemma one : 1 > 0.
```

<input-area>
```proof
We conclude that (1 > 0).
Qed.
```
</input-area>
<hint title="Stuck?">
Think about zero.
```proof
Help.
```
</hint>
"""


def test_parse_sample_structure():
    doc = parse_document(SAMPLE)
    assert doc.preamble == ("#library course.wpl", "# Sheet 1")
    kinds = [type(b).__name__ for b in doc.blocks]
    assert kinds == ["Text", "Code", "Text", "InputArea", "Hint"]
    area = doc.blocks[3]
    assert area.blocks == (Code("We conclude that (1 > 0).\nQed.\n"),)
    hint = doc.blocks[4]
    assert hint.title == "Stuck?"
    assert hint.blocks[0] == Text("Think about zero.\n")


def test_code_blocks_remember_their_start_line():
    doc = parse_document(SAMPLE)
    code = doc.blocks[1]
    assert code.start_line == 8  # the line after ```proof
    # start_line is positional metadata, not part of equality
    assert code == Code(code.text, start_line=999)


def test_render_parse_identity_on_sample():
    doc = parse_document(SAMPLE)
    assert render(doc) == SAMPLE
    assert parse_document(render(doc)) == doc


def test_backslash_area_closer_accepted():
    text = "#wp 1\n<input-area>\n<\\input-area>\n"
    doc = parse_document(text)
    assert doc.blocks == (InputArea(()),)


def test_header_and_marker_errors():
    with pytest.raises(DocError, match="missing"):
        parse_document("no header\n")
    with pytest.raises(UnbalancedMarker):
        parse_document("#wp 1\n</input-area>\n")
    with pytest.raises(UnbalancedMarker):
        parse_document("#wp 1\n<input-area>\n")
    with pytest.raises(UnbalancedMarker):
        parse_document("#wp 1\n```proof\nTake x : ℝ.\n")
    with pytest.raises(NestedArea):
        parse_document('#wp 1\n<input-area>\n<hint title="h">\n')
    err = pytest.raises(UnbalancedMarker,
                        parse_document, "#wp 1\nx\n<input-area>\n").value
    assert err.line == 3


def test_extract_sheet_empties_areas_only():
    doc = parse_document(SAMPLE)
    sheet = extract_sheet(doc)
    assert sheet.blocks[3] == InputArea((Code(""),))
    assert sheet.blocks[:3] == doc.blocks[:3]
    assert sheet.blocks[4] == doc.blocks[4]
    # extraction is idempotent
    assert extract_sheet(sheet) == sheet


def test_splice_adopts_area_contents():
    master = parse_document(SAMPLE)
    sheet = extract_sheet(master)
    filled = WaterDoc(sheet.version, sheet.preamble, tuple(
        InputArea((Code("Qed.\n"),)) if isinstance(b, InputArea) else b
        for b in sheet.blocks))
    spliced = splice_submission(master, filled)
    assert isinstance(spliced, WaterDoc)
    assert spliced.blocks[3] == InputArea((Code("Qed.\n"),))
    assert spliced.blocks[1] == master.blocks[1]


def test_splice_detects_tampering():
    master = parse_document(SAMPLE)

    def tampered(index, block):
        blocks = list(master.blocks)
        blocks[index] = block
        return WaterDoc(master.version, master.preamble, tuple(blocks))

    r = splice_submission(master, tampered(1, Code("Lemma one : 1 > 9.\n")))
    assert r == TamperReport(1, "content outside input areas differs")

    r = splice_submission(master, tampered(3, Code("x\n")))
    assert r == TamperReport(3, "input area was removed")

    r = splice_submission(master, WaterDoc(master.version, ("#other",),
                                           master.blocks))
    assert r == TamperReport(-1, "preamble differs")

    shorter = WaterDoc(master.version, master.preamble, master.blocks[:-1])
    assert splice_submission(master, shorter) == \
        TamperReport(4, "submission is missing blocks")
    longer = WaterDoc(master.version, master.preamble,
                      master.blocks + (Text("extra\n"),))
    assert splice_submission(master, longer) == \
        TamperReport(5, "submission has extra blocks")


@settings(deadline=None)
@given(S.documents)
def test_render_parse_round_trip(doc):
    assert parse_document(render(doc)) == doc


@settings(deadline=None, max_examples=50)
@given(S.documents)
def test_splice_of_own_sheet_reproduces_master(doc):
    sheet = extract_sheet(doc)
    spliced = splice_submission(sheet, sheet)
    assert spliced == sheet
    # splicing the master's own areas back gives the master
    assert splice_submission(doc, doc) == doc
