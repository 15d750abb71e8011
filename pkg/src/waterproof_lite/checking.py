"""Continuous checking of mixed documents.

Concatenated code blocks form a sequence of lemma/proof units; each unit
is checked independently against a fresh proof state, so an unfinished
or broken proof never poisons later exercises (admitted semantics).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional

from . import auto
from .doc import Code, InputArea, WaterDoc
from .kernel import (
    Environment, KernelError, SortMismatch, check_formula, formula_str,
    free_vars, goal_display, initial_state,
)
from .lang import BadSentence, Sentence, SourceSpan, parse_script_lenient
from .tactics import TacticError, step


@dataclass(frozen=True, slots=True)
class SentenceResult:
    span: Optional[SourceSpan]
    status: str  # ok | error | skipped
    diagnostic: Optional[str] = None
    goals_after: tuple[str, ...] = ()
    area: Optional[int] = None  # input-area index, if inside one


@dataclass(frozen=True, slots=True)
class UnitResult:
    name: str
    verdict: str  # correct | incorrect | incomplete
    first_diagnostic: Optional[str] = None
    areas: frozenset[int] = frozenset()


@dataclass(frozen=True, slots=True)
class CheckResult:
    sentences: tuple[SentenceResult, ...]
    units: tuple[UnitResult, ...]
    area_status: tuple[str, ...]  # green | red, per input area


class CheckTimeout(Exception):
    pass


def _offset_span(span: Optional[SourceSpan], lines: int) -> Optional[SourceSpan]:
    if span is None:
        return None
    return SourceSpan(span.start_line + lines, span.start_col,
                      span.end_line + lines, span.end_col)


def _collect_items(document: WaterDoc, env: Environment):
    """All parsed sentences of the document's code, in order, tagged with
    the enclosing input-area index (hint code is illustrative, not checked)."""
    items: list[tuple[object, Optional[int]]] = []
    area_count = 0
    for block in document.blocks:
        if isinstance(block, Code):
            pieces = [(block, None)]
        elif isinstance(block, InputArea):
            pieces = [(b, area_count) for b in block.blocks
                      if isinstance(b, Code)]
            area_count += 1
        else:  # Text and Hint blocks carry no checkable code
            continue
        for code, area in pieces:
            offset = code.start_line - 1
            for parsed in parse_script_lenient(code.text, env.notations):
                if isinstance(parsed, BadSentence):
                    parsed = BadSentence(_offset_span(parsed.span, offset),
                                         parsed.error)
                else:
                    parsed = replace(parsed,
                                     span=_offset_span(parsed.span, offset))
                items.append((parsed, area))
    return items, area_count


def _check_unit(items, env: Environment, budget: auto.SearchBudget,
                deadline: Optional[float]):
    """Check one LemmaHeader..Qed unit; returns (UnitResult, results)."""
    results: list[SentenceResult] = []
    areas = frozenset(a for _, a in items if a is not None)
    header, area0 = items[0]
    name, target = header.payload
    try:
        if free_vars(target):
            raise SortMismatch(
                f"the statement has free variables {sorted(free_vars(target))}")
        check_formula(target, {}, env)
    except (KernelError, SortMismatch) as e:
        results.append(SentenceResult(header.span, "error", str(e), (), area0))
        for sent, area in items[1:]:
            results.append(SentenceResult(getattr(sent, "span", None),
                                          "skipped", None, (), area))
        return UnitResult(name, "incorrect", str(e), areas), results

    state = initial_state(target)
    results.append(SentenceResult(
        header.span, "ok", None, (formula_str(target),), area0))
    failed: Optional[str] = None
    saw_qed = False
    for sent, area in items[1:]:
        if failed is not None:
            results.append(SentenceResult(getattr(sent, "span", None),
                                          "skipped", None, (), area))
            continue
        if deadline is not None and time.monotonic() > deadline:
            failed = "checking timed out"
            results.append(SentenceResult(getattr(sent, "span", None),
                                          "error", failed, (), area))
            continue
        if isinstance(sent, BadSentence):
            failed = sent.error.message
            results.append(SentenceResult(sent.span, "error", failed, (), area))
            continue
        try:
            state = step(state, sent, env, budget).state
        except TacticError as e:
            failed = e.message
            results.append(SentenceResult(sent.span, "error", failed, (), area))
            continue
        if sent.kind == "Qed":
            saw_qed = True
        results.append(SentenceResult(
            sent.span, "ok", None,
            tuple(goal_display(g) for g in state.goals), area))

    if failed is not None:
        verdict = "incomplete" if failed == "Proof is not finished." \
            else "incorrect"
        return UnitResult(name, verdict, failed, areas), results
    if saw_qed and state.status == "complete":
        return UnitResult(name, "correct", None, areas), results
    return UnitResult(name, "incomplete", None, areas), results


def check_document(document: WaterDoc, env: Environment,
                   budget: auto.SearchBudget = auto.DEFAULT_BUDGET,
                   unit_timeout: Optional[float] = 10.0) -> CheckResult:
    items, area_count = _collect_items(document, env)

    # group into units at each LemmaHeader
    units: list[list] = []
    stray: list = []
    for item in items:
        sent = item[0]
        if isinstance(sent, Sentence) and sent.kind == "LemmaHeader":
            units.append([item])
        elif units:
            units[-1].append(item)
        else:
            stray.append(item)

    sentence_results: list[SentenceResult] = []
    unit_results: list[UnitResult] = []
    for sent, area in stray:
        diag = "a proof must start with `Lemma <name> : <statement>.`"
        if isinstance(sent, BadSentence):
            diag = sent.error.message
        sentence_results.append(SentenceResult(getattr(sent, "span", None),
                                               "error", diag, (), area))
    for unit in units:
        deadline = None if unit_timeout is None \
            else time.monotonic() + unit_timeout
        unit_result, results = _check_unit(unit, env, budget, deadline)
        unit_results.append(unit_result)
        sentence_results.extend(results)

    area_status = []
    for area in range(area_count):
        in_area = [r for r in sentence_results if r.area == area]
        touching = [u for u in unit_results if area in u.areas]
        green = bool(touching) and \
            all(r.status == "ok" for r in in_area) and \
            all(u.verdict == "correct" for u in touching)
        area_status.append("green" if green else "red")
    return CheckResult(tuple(sentence_results), tuple(unit_results),
                       tuple(area_status))
