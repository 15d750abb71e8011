"""Mixed exercise documents (.wpd).

A document is markdown text interleaved with fenced proof-code blocks.
Input areas mark the only student-editable regions; hints are collapsible
teacher notes.  The module also provides master → exercise-sheet
extraction and the anti-tamper splice used by the autograder.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Union

FORMAT_HEADER = "#wp 1"


class DocError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnbalancedMarker(DocError):
    pass


class NestedArea(DocError):
    pass


@dataclass(frozen=True, slots=True)
class Text:
    markdown: str


@dataclass(frozen=True, slots=True)
class Code:
    text: str
    start_line: int = field(default=0, compare=False)


@dataclass(frozen=True, slots=True)
class InputArea:
    blocks: tuple[Union[Text, Code], ...]


@dataclass(frozen=True, slots=True)
class Hint:
    title: str
    blocks: tuple[Union[Text, Code], ...]


Block = Union[Text, Code, InputArea, Hint]


@dataclass(frozen=True, slots=True)
class WaterDoc:
    version: str = "1"
    preamble: tuple[str, ...] = ()
    blocks: tuple[Block, ...] = ()


@dataclass(frozen=True, slots=True)
class TamperReport:
    block_index: int
    reason: str


_HINT_OPEN = re.compile(r'^<hint title="(?P<title>[^"]*)">$')
_AREA_CLOSERS = ("</input-area>", "<\\input-area>")


def parse_document(text: str) -> WaterDoc:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise DocError(f"missing `{FORMAT_HEADER}` header", 1)

    preamble: list[str] = []
    i = 1
    while i < len(lines) and lines[i].startswith("#"):
        preamble.append(lines[i])
        i += 1

    blocks: list[Block] = []
    container: list = []  # [] = top level; else [kind, open_line, title, blocks]
    text_lines: list[str] = []
    code_lines: list[str] | None = None
    code_open_line = 0

    def sink() -> list:
        return container[3] if container else blocks

    def flush_text():
        if text_lines:
            sink().append(Text("\n".join(text_lines) + "\n"))
            text_lines.clear()

    for lineno in range(i + 1, len(lines) + 1):
        line = lines[lineno - 1]
        stripped = line.strip()
        if code_lines is not None:
            if stripped == "```":
                sink().append(Code("\n".join(code_lines) + "\n" if code_lines
                                   else "", code_open_line))
                code_lines = None
            else:
                code_lines.append(line)
            continue
        if stripped == "```proof":
            flush_text()
            code_lines = []
            code_open_line = lineno + 1
        elif stripped == "<input-area>":
            flush_text()
            if container:
                raise NestedArea("input areas and hints cannot nest", lineno)
            container = ["area", lineno, None, []]
        elif stripped in _AREA_CLOSERS:
            if not container or container[0] != "area":
                raise UnbalancedMarker("closing marker without an open "
                                       "input area", lineno)
            flush_text()
            blocks.append(InputArea(tuple(container[3])))
            container = []
        elif _HINT_OPEN.match(stripped):
            flush_text()
            if container:
                raise NestedArea("input areas and hints cannot nest", lineno)
            container = ["hint", lineno, _HINT_OPEN.match(stripped)["title"], []]
        elif stripped == "</hint>":
            if not container or container[0] != "hint":
                raise UnbalancedMarker("closing marker without an open hint",
                                       lineno)
            flush_text()
            blocks.append(Hint(container[2], tuple(container[3])))
            container = []
        else:
            text_lines.append(line)
    if code_lines is not None:
        raise UnbalancedMarker("unterminated ```proof block", code_open_line - 1)
    if container:
        raise UnbalancedMarker(f"unclosed {container[0]}", container[1])
    flush_text()
    return WaterDoc("1", tuple(preamble), tuple(blocks))


def _render_inner(blocks) -> str:
    out = []
    for b in blocks:
        match b:
            case Text(markdown):
                out.append(markdown)
            case Code(text, _):
                out.append("```proof\n" + text + "```\n")
            case InputArea(inner):
                out.append("<input-area>\n" + _render_inner(inner)
                           + "</input-area>\n")
            case Hint(title, inner):
                out.append(f'<hint title="{title}">\n' + _render_inner(inner)
                           + "</hint>\n")
    return "".join(out)


def render(doc: WaterDoc) -> str:
    head = FORMAT_HEADER + "\n"
    for line in doc.preamble:
        head += line + "\n"
    return head + _render_inner(doc.blocks)


def extract_sheet(master: WaterDoc) -> WaterDoc:
    """Strip every input area's contents, leaving one empty code block."""
    out = []
    for b in master.blocks:
        if isinstance(b, InputArea):
            out.append(InputArea((Code(""),)))
        else:
            out.append(b)
    return replace(master, blocks=tuple(out))


def splice_submission(original: WaterDoc,
                      submission: WaterDoc) -> Union[WaterDoc, TamperReport]:
    """Verify the submission matches the original everywhere outside input
    areas, then adopt the submission's input-area contents."""
    if original.preamble != submission.preamble:
        return TamperReport(-1, "preamble differs")
    spliced: list[Block] = []
    for index, a in enumerate(original.blocks):
        if index >= len(submission.blocks):
            return TamperReport(index, "submission is missing blocks")
        b = submission.blocks[index]
        if isinstance(a, InputArea):
            if not isinstance(b, InputArea):
                return TamperReport(index, "input area was removed")
            spliced.append(b)
            continue
        if a != b:
            return TamperReport(index, "content outside input areas differs")
        spliced.append(a)
    if len(submission.blocks) > len(original.blocks):
        return TamperReport(len(original.blocks), "submission has extra blocks")
    return replace(original, blocks=tuple(spliced))
