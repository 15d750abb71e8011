import pytest

from helpers import GOLDEN_SCRIPT, WEAK_LIB, first_error, run_unit
from waterproof_lite.kernel import (
    EMPTY_ENV, NAT, REAL, Atom, ForAll, Mul, Pred, Var, initial_state, rat,
)
from waterproof_lite.lang import parse_formula, parse_script
from waterproof_lite.library import load_library
from waterproof_lite.tactics import (
    TacticError, expand_definition, help_notes, step,
)


def run_steps(target_text, script, env=EMPTY_ENV):
    state = initial_state(parse_formula(target_text, env.notations))
    for sentence in parse_script(script, env.notations):
        state = step(state, sentence, env).state
    return state


def error_of(target_text, script, env=EMPTY_ENV):
    with pytest.raises(TacticError) as exc:
        run_steps(target_text, script, env)
    return exc.value.message


# ---------------------------------------------------------------------------
# the golden proof


def test_golden_proof_completes():
    state = run_unit(GOLDEN_SCRIPT)
    assert state.status == "complete"


# ---------------------------------------------------------------------------
# take / assume / choose


def test_take_introduces_variables_in_groups():
    state = run_steps("forall x : ℝ, forall y : ℝ, forall n : ℕ, x + y > n",
                      "Take x, y : ℝ and n : ℕ.")
    g = state.focused
    assert g.variables == (("x", REAL), ("y", REAL), ("n", NAT))
    assert g.target == parse_formula("x + y > n")


def test_take_error_messages_are_exact():
    assert error_of("x > 0 => x > 0", "Take x : ℝ.") == (
        "`Take ...` cannot be used to prove an implication. "
        "Use `Assume that ...` instead.")
    assert error_of("there exists x : ℝ, x > 0", "Take x : ℝ.") == (
        "`Take ...` can only be used to prove a `for all`-statement "
        "or to construct a map.")
    assert error_of("forall x : ℝ, x = x", "Take x, y : ℝ.") == \
        "Tried to introduce too many variables."
    assert error_of("forall x : ℝ, x = x", "Take x : ℕ.") == \
        "Expected a variable of type ℝ instead of ℕ."


def test_take_exact_sort_even_with_coercion_available():
    # ℕ ↪ ℝ exists, but Take demands the binder's own sort
    assert "instead of" in error_of("forall x : ℝ, x = x", "Take n : ℕ.")


def test_assume_mirror_error_and_wrong_assumption():
    assert error_of("forall x : ℝ, x = x", "Assume that (0 = 0).") == (
        "`Assume that ...` can only be used to prove an implication (⇒). "
        "Use `Take ...` to introduce a variable.")
    msg = error_of("1 > 0 => 0 = 0", "Assume that (2 > 0).")
    assert msg == "This is not what must be assumed. Expected (1 > 0)."


def test_assume_adds_labeled_hypothesis():
    state = run_steps("1 > 0 => 0 = 0", "Assume that (1 > 0) (pos).")
    assert state.focused.hypotheses[-1].label == "pos"
    assert state.focused.target == parse_formula("0 = 0")


def test_choose_records_witness_equation():
    state = run_steps("there exists a : ℝ, a > 2", "Choose a := (3).")
    g = state.focused
    assert ("a", REAL) in g.variables
    chosen = [h for h in g.hypotheses if h.origin == "chosen"]
    assert chosen and chosen[0].statement == Atom("=", Var("a"), rat(3))
    assert g.target == parse_formula("a > 2")


def test_choose_requires_coercible_witness_sort():
    msg = error_of("there exists n : ℕ, n = n", "Choose n := (1/2).")
    assert "does not have type ℕ" in msg
    # ℕ coerces into ℝ, so a natural witness for a real ∃ is fine
    state = run_steps("there exists a : ℝ, a = a", "Choose a := (3).")
    assert state.status == "open"


# ---------------------------------------------------------------------------
# conjunction, disjunction, case wrappers


def test_show_both_requires_exact_conjunction_order():
    state = run_steps("0 = 0 /\\ 1 = 1",
                      "We show both (0 = 0) and (1 = 1).")
    assert len(state.goals) == 2
    assert state.needs_bullet
    msg = error_of("0 = 0 /\\ 1 = 1", "We show both (1 = 1) and (0 = 0).")
    assert "in order" in msg


def test_either_or_failure_message_is_exact():
    assert error_of("0 = 0", "Either (P) or (¬P).") == (
        "Could not find a proof that the first or the second "
        "statement holds.")


def test_either_or_wraps_both_goals_with_case_tags():
    state = run_steps("0 = 0", "Take eps : ℝ." if False else
                      "Either (1 < 2) or (1 >= 2).")
    assert len(state.goals) == 2
    assert all(g.wrapper is not None and g.wrapper.kind == "case"
               for g in state.goals)
    assert state.needs_bullet


def test_case_wrapper_errors_are_exact():
    assert error_of("0 = 0",
                    "Either (1 < 2) or (1 >= 2). - Case (2 < 2).") == \
        "Wrong case specified."
    assert error_of("0 = 0", "Case (1 < 2).") == "No need to specify case."


def test_wrapped_goal_blocks_other_tactics_with_instruction():
    msg = error_of("0 = 0",
                   "Either (1 < 2) or (1 >= 2). - We conclude that (0 = 0).")
    assert msg == ("Add the following line to the proof:\n"
                   "  Case (1 < 2).")


def test_wrapper_guard_fires_even_without_bullet():
    # the signposting demand outranks the missing-bullet complaint
    msg = error_of("0 = 0",
                   "Either (1 < 2) or (1 >= 2). We conclude that (0 = 0).")
    assert msg.startswith("Add the following line to the proof:")


# ---------------------------------------------------------------------------
# bullets


def test_bullet_bookkeeping():
    assert error_of("0 = 0", "- We conclude that (0 = 0).") == \
        "No bullet is needed here."
    assert error_of("0 = 0 /\\ 1 = 1",
                    "We show both (0 = 0) and (1 = 1). "
                    "+ We conclude that (0 = 0).") == \
        "Expected a bullet `-` to focus the next goal."
    assert error_of("0 = 0 /\\ 1 = 1",
                    "We show both (0 = 0) and (1 = 1). "
                    "We conclude that (0 = 0).") == \
        "Expected a bullet `-` to focus the next goal."


def test_nested_splits_use_deeper_markers():
    state = run_steps(
        "(0 = 0 /\\ 1 = 1) /\\ 2 = 2",
        "We show both (0 = 0 /\\ 1 = 1) and (2 = 2). "
        "- We show both (0 = 0) and (1 = 1). "
        "+ We conclude that (0 = 0). "
        "+ We conclude that (1 = 1). "
        "- We conclude that (2 = 2).")
    assert state.status == "complete"


# ---------------------------------------------------------------------------
# goal restatement / chains / conclude


def test_need_to_show_unfolds_membership():
    state = run_steps("3 : [0,4)", "We need to show that (0 <= 3 /\\ 3 < 4).")
    assert state.focused.target == parse_formula("0 <= 3 /\\ 3 < 4")
    msg = error_of("3 : [0,4)", "We need to show that (3 < 4).")
    assert msg.startswith("This is not what we need to show.")


def test_conclude_that_closes_or_complains():
    assert run_steps("1 + 1 = 2", "We conclude that (1 + 1 = 2).").status == \
        "complete"
    msg = error_of("1 + 1 = 2", "We conclude that (2 = 2).")
    assert msg == "This does not match the goal (1 + 1 = 2)."


def test_chain_link_blame_message():
    msg = error_of(
        "forall eps : ℝ, eps > 0 => 0 < 4 - eps/2",
        "Take eps : ℝ. Assume that (eps > 0). "
        "We conclude that (& 0 < 4 + 1 < 4 - eps/2).")
    assert msg == "Could not verify step 2 of the chain (4 + 1 < 4 - eps/2)."


def test_chain_direction_error_surfaces():
    msg = error_of("0 < 2", "We conclude that (& 0 < 1 > 0).")
    assert "may not mix `<` with `>`" in msg


def test_chain_global_statement_must_match_goal():
    msg = error_of("1 = 2", "We conclude that (& 0 < 1 < 2).")
    assert "does not match the goal" in msg
    # strengthening is fine: proving 0 < eps closes 0 ≤ eps
    state = run_steps("forall eps : ℝ, eps > 1 => 0 <= eps",
                      "Take eps : ℝ. Assume that (eps > 1). "
                      "We conclude that (& 0 < 1 < eps).")
    assert state.status == "complete"


# ---------------------------------------------------------------------------
# it holds that / by / suffices


def test_it_holds_that_asserts_and_labels():
    state = run_steps("0 = 0", "It holds that (1 + 1 = 2) (two).")
    assert state.focused.hypotheses[-1].label == "two"
    msg = error_of("0 = 0", "It holds that (1 = 2).")
    assert msg == "Could not verify that (1 = 2) holds."


def test_by_clause_verdicts():
    env = load_library(WEAK_LIB)
    msg = error_of("0 = 0", "By sq_nonneg it holds that (1 + 1 = 2).", env)
    assert msg == "The statement holds, but the proof does not use sq_nonneg."
    state = run_steps("0 = 0",
                      "By sq_nonneg it holds that (forall x : ℝ, x * x >= 0).",
                      env)
    assert state.focused.hypotheses[-1].statement == \
        ForAll("x", REAL, Atom("≥", Mul(Var("x"), Var("x")), rat(0)))
    msg = error_of("0 = 0", "By nonsense it holds that (0 = 0).", env)
    assert msg == "Unknown lemma or hypothesis: nonsense."


def test_suffices_to_show_replaces_goal():
    state = run_steps("0 <= 1", "It suffices to show that (0 < 1).")
    assert state.focused.target == parse_formula("0 < 1")
    msg = error_of("0 = 1", "It suffices to show that (2 = 2).")
    assert msg == ("The claimed statement does not suffice to prove the "
                   "goal (0 = 1).")


def test_shielded_assertion_needs_weak_collection():
    stmt = "It holds that (forall x : ℝ, x * x >= 0)."
    assert error_of("0 = 0", stmt) == \
        "Could not verify that (∀ x : ℝ, x·x ≥ 0) holds."
    env = load_library(WEAK_LIB)
    assert run_steps("0 = 0", stmt + " We conclude that (0 = 0).", env) \
        .status == "complete"


# ---------------------------------------------------------------------------
# induction


def test_induction_produces_wrapped_base_and_step():
    state = run_steps("forall n : ℕ, n >= 0", "We use induction on n.")
    kinds = [g.wrapper.kind for g in state.goals]
    assert kinds == ["base_case", "induction_step"]
    assert error_of("forall n : ℕ, n >= 0",
                    "We use induction on n. "
                    "- We first show the base case (1 >= 0).") == \
        "Wrong base case specified."
    assert error_of("0 = 0",
                    "We first show the base case (0 >= 0).") == \
        "No need to specify the base case."
    assert error_of("0 = 0",
                    "We now show the induction step (0 >= 0).") == \
        "No need to specify the induction step."


def test_induction_full_proof():
    script = (
        "Lemma nat_nonneg : for all n : ℕ, n >= 0.\n"
        "We use induction on n.\n"
        "- We first show the base case (0 >= 0).\n"
        "  We conclude that (0 >= 0).\n"
        "- We now show the induction step (for all n : ℕ, n >= 0 => n + 1 >= 0).\n"
        "  Take n : ℕ. Assume that (n >= 0).\n"
        "  We conclude that (n + 1 >= 0).\n"
        "Qed.")
    assert run_unit(script).status == "complete"


def test_induction_requires_nat_forall():
    assert "over ℕ" in error_of("forall x : ℝ, x = x",
                                "We use induction on x.")


# ---------------------------------------------------------------------------
# qed / no goals / headers


def test_qed_and_finished_proof_errors():
    assert error_of("0 = 0", "Qed.") == "Proof is not finished."
    assert error_of("0 = 0", "We conclude that (0 = 0). Take x : ℝ.") == \
        "The proof is already finished."
    assert error_of("0 = 0", "Lemma again : 0 = 0.") == \
        "A lemma header cannot appear inside a proof."
    state = run_steps("0 = 0", "Proof. We conclude that (0 = 0). Qed.")
    assert state.status == "complete"


# ---------------------------------------------------------------------------
# help and expand


def test_help_suggestions_follow_goal_shape():
    env = EMPTY_ENV

    def notes(target_text, script=""):
        state = run_steps(target_text, script, env)
        return help_notes(state.focused, env)

    assert notes("forall x : ℝ, x = x") == ("Take x : ℝ.",)
    assert notes("1 > 0 => 0 = 0") == ("Assume that (1 > 0).",)
    assert notes("there exists a : ℝ, a = a") == ("Choose a := (...).",)
    assert notes("0 = 0 /\\ 1 = 1") == \
        ("We show both (0 = 0) and (1 = 1).",)
    assert notes("0 = 0 \\/ 1 = 1") == \
        ("It suffices to show that (0 = 0).",
         "Either disjunct may be chosen.")
    assert notes("1 + 1 = 2") == ("We conclude that (1 + 1 = 2).",)
    wrapped = run_steps("0 = 0", "Either (1 < 2) or (1 >= 2).")
    assert help_notes(wrapped.focused, env) == ("Case (1 < 2).",)


def test_help_is_a_no_op_sentence():
    state = run_steps("0 = 0", "")
    outcome = step(state, parse_script("Help.")[0], EMPTY_ENV)
    assert outcome.state == state
    assert outcome.notes == ("We conclude that (0 = 0).",)


def test_expand_definition_notes_and_errors():
    env = load_library(
        '#definition positive(x : ℝ) := x > 0\n'
        '#notation "is positive" := positive\n')
    notes = expand_definition("positive", parse_formula("positive(3)"), env)
    assert notes == ("3 > 0",)
    with pytest.raises(TacticError, match="Unknown definition"):
        expand_definition("negative", parse_formula("0 = 0"), env)
    with pytest.raises(TacticError, match="does not occur"):
        expand_definition("positive", parse_formula("0 = 0"), env)


def test_state_is_unchanged_on_failure():
    state = run_steps("0 = 0 /\\ 1 = 1", "We show both (0 = 0) and (1 = 1).")
    bad = parse_script("We conclude that (5 = 5).")[0]
    with pytest.raises(TacticError):
        step(state, bad, EMPTY_ENV)
    # frozen dataclasses: identity of goals and stack preserved
    assert state.goals and state.bullet_stack and state.needs_bullet
