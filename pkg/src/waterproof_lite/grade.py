"""Batch autograder: splice a submission into the original document,
check every exercise, and award binary marks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from . import __version__, auto
from .checking import check_document
from .doc import InputArea, TamperReport, WaterDoc, splice_submission
from .kernel import Environment

_SEVERITY = {"correct": 0, "incomplete": 1, "incorrect": 2, "tampered": 3}


@dataclass(frozen=True, slots=True)
class ExerciseResult:
    exercise_id: str
    verdict: str  # correct | incorrect | incomplete | tampered
    first_diagnostic: Optional[str] = None


@dataclass(frozen=True, slots=True)
class GradeReport:
    per_exercise: tuple[ExerciseResult, ...]
    total: int
    max_points: int
    checker_version: str
    tampered: bool = False


def _area_count(document: WaterDoc) -> int:
    return sum(1 for b in document.blocks if isinstance(b, InputArea))


def grade(original: WaterDoc, submission: WaterDoc, env: Environment,
          unit_timeout: Optional[float] = 10.0,
          budget: auto.SearchBudget = auto.DEFAULT_BUDGET) -> GradeReport:
    n = _area_count(original)
    ids = [f"exercise-{k + 1}" for k in range(n)]
    spliced = splice_submission(original, submission)
    if isinstance(spliced, TamperReport):
        diag = f"block {spliced.block_index}: {spliced.reason}"
        per = tuple(ExerciseResult(i, "tampered", diag) for i in ids)
        return GradeReport(per, 0, n, __version__, tampered=True)

    result = check_document(spliced, env, budget, unit_timeout)
    per = []
    for area, exercise_id in enumerate(ids):
        touching = [u for u in result.units if area in u.areas]
        if not touching:
            per.append(ExerciseResult(exercise_id, "incomplete",
                                      "input area is empty"))
            continue
        worst = max(touching, key=lambda u: _SEVERITY[u.verdict])
        diag = next((u.first_diagnostic for u in touching
                     if u.first_diagnostic), None)
        per.append(ExerciseResult(exercise_id, worst.verdict, diag))
    total = sum(1 for e in per if e.verdict == "correct")
    return GradeReport(tuple(per), total, n, __version__)


def report_to_json(report: GradeReport) -> str:
    payload = {
        "checkerVersion": report.checker_version,
        "maxPoints": report.max_points,
        "total": report.total,
        "tampered": report.tampered,
        "perExercise": [
            {"exerciseId": e.exercise_id,
             "verdict": e.verdict,
             "firstDiagnostic": e.first_diagnostic}
            for e in report.per_exercise
        ],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)


def report_to_text(report: GradeReport) -> str:
    lines = [f"score: {report.total}/{report.max_points}"]
    for e in report.per_exercise:
        line = f"  {e.exercise_id}: {e.verdict}"
        if e.first_diagnostic:
            line += f" — {e.first_diagnostic}"
        lines.append(line)
    return "\n".join(lines)
