"""Shared fixtures for the test suite."""

from waterproof_lite.auto import DEFAULT_BUDGET
from waterproof_lite.kernel import EMPTY_ENV, initial_state
from waterproof_lite.lang import parse_script
from waterproof_lite.tactics import TacticError, step

GOLDEN_HEADER = (
    "Lemma near_four : for all eps : ℝ, eps > 0 => "
    "(there exists a : ℝ, a in [0,4) /\\ 4 - eps < a)."
)

GOLDEN_BODY = """\
Take eps : ℝ. Assume that (eps > 0).
Either (eps < 2) or (eps >= 2).
- Case (eps < 2).
  Choose a := (4 - eps/2).
  We show both (a : [0,4)) and (4 - eps < a).
  + We need to show that (0 <= a /\\ a < 4).
    We show both (0 <= a) and (a < 4).
    * We conclude that (& 0 < 4 - 1 < 4 - eps/2 = a).
    * We conclude that (a < 4).
  + We conclude that (4 - eps < a).
- Case (eps >= 2).
  Choose a := (3).
  We show both (3 : [0,4)) and (4 - eps < 3).
  + We conclude that (3 : [0,4)).
  + We conclude that (& 4 - eps <= 4 - 2 = 2 < 3).
Qed.
"""

GOLDEN_SCRIPT = GOLDEN_HEADER + "\n" + GOLDEN_BODY

WEAK_LIB = """\
#database facts
#lemma sq_nonneg : for all x : ℝ, x * x >= 0
#collection weak += facts
"""


def run_unit(script, env=EMPTY_ENV, budget=DEFAULT_BUDGET):
    """Run a `Lemma ... Qed.` script to its final proof state."""
    sentences = parse_script(script, env.notations)
    assert sentences[0].kind == "LemmaHeader"
    state = initial_state(sentences[0].payload[1])
    for sentence in sentences[1:]:
        state = step(state, sentence, env, budget).state
    return state


def first_error(script, env=EMPTY_ENV, budget=DEFAULT_BUDGET):
    """The first TacticError message a script produces, or None."""
    try:
        run_unit(script, env, budget)
    except TacticError as e:
        return e.message
    return None
