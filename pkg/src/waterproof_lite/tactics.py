"""Semantics of the proof sentences.

Each tactic transforms the focused goal of a ProofState.  The module also
houses the `step` dispatcher, which enforces the bullet discipline and the
wrapper guard (no tactic other than the matching signposting sentence may
touch a wrapped goal), and the Help suggestion table.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from . import auto
from . import chains as chains_mod
from .chains import Chain, ChainSortError, DirectionError
from .kernel import (
    MAX_BULLET_DEPTH, NAT, Add, And, Atom, BulletFrame, Environment, Exists,
    ForAll, Formula, Goal, Iff, Implies, InSet, Interval, KernelError, Not,
    Or, Pred, ProofState, SortMismatch, Var, Wrapper, alpha_equal, bullet_marker,
    coercible, convertible, formula_str, interval_bounds, rat, substitute,
    term_sort, unfold, wrapper_display, wrapper_unwrap_line,
)
from .lang import Sentence, SourceSpan


class TacticError(Exception):
    def __init__(self, code: str, message: str,
                 span: Optional[SourceSpan] = None,
                 goal: Optional[Goal] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span
        self.goal = goal


@dataclass(frozen=True, slots=True)
class TacticOutcome:
    state: ProofState
    notes: tuple[str, ...] = ()


# sentence kind that may unwrap each wrapper kind
_UNWRAPPER = {
    "case": "Case",
    "expected": "NeedToShow",
    "base_case": "BaseCase",
    "induction_step": "InductionStep",
}


# ---------------------------------------------------------------------------
# Helpers


def _surface(f: Formula, env: Environment) -> Formula:
    """Expose the head constructor: unfold a defined head predicate and
    interval-membership sugar, but nothing below the head."""
    seen: set[str] = set()
    while True:
        if isinstance(f, Pred) and f.name in env.definitions and \
                not env.definitions[f.name].opaque and f.name not in seen:
            seen.add(f.name)
            f = unfold(f, env, (f.name,))
            continue
        if isinstance(f, InSet) and isinstance(f.the_set, Interval):
            f = interval_bounds(f.elem, f.the_set)
            continue
        return f


def _resolve_chosen(goal: Goal, f: Formula) -> Formula:
    """Substitute chosen witnesses (defining equations) into f, so that
    statements may refer to the chosen value either by name or literally."""
    for h in reversed(goal.hypotheses):
        if h.origin == "chosen" and isinstance(h.statement, Atom) and \
                h.statement.rel == "=" and isinstance(h.statement.lhs, Var):
            f = substitute(f, h.statement.lhs.name, h.statement.rhs)
    return f


def _conv(goal: Goal, f: Formula, g: Formula, env: Environment) -> bool:
    return convertible(_resolve_chosen(goal, f), _resolve_chosen(goal, g), env)


def _prove_with_by(goal: Goal, f: Formula, by: Optional[str],
                   env: Environment, budget: auto.SearchBudget,
                   span) -> None:
    if by is None:
        if not auto.prove(goal, f, env, budget).ok:
            raise TacticError(
                "automation",
                f"Could not verify that ({formula_str(f)}) holds.", span, goal)
        return
    try:
        verdict = auto.prove_required(goal, f, by, env, budget)
    except auto.UnresolvedReference:
        raise TacticError("unknown-reference",
                          f"Unknown lemma or hypothesis: {by}.", span, goal)
    if verdict == "proof-found":
        return
    if verdict == "lemma-unused":
        raise TacticError(
            "lemma-unused",
            f"The statement holds, but the proof does not use {by}.",
            span, goal)
    raise TacticError(
        "automation",
        f"Could not verify that ({formula_str(f)}) holds using {by}.",
        span, goal)


# ---------------------------------------------------------------------------
# Individual tactics: each takes the focused (unwrapped, unless it is an
# unwrapper) goal and returns the tuple of replacement goals plus notes.


def _take(g: Goal, groups, env, span) -> tuple[Goal, ...]:
    t = _surface(g.target, env)
    if isinstance(t, Implies):
        raise TacticError(
            "take-on-implication",
            "`Take ...` cannot be used to prove an implication. "
            "Use `Assume that ...` instead.", span, g)
    if not isinstance(t, ForAll):
        raise TacticError(
            "take-on-non-forall",
            "`Take ...` can only be used to prove a `for all`-statement "
            "or to construct a map.", span, g)
    for names, sort in groups:
        for name in names:
            if not isinstance(t, ForAll):
                raise TacticError("take-too-many",
                                  "Tried to introduce too many variables.",
                                  span, g)
            if t.sort != sort:
                raise TacticError(
                    "take-sort",
                    f"Expected a variable of type {t.sort} instead of {sort}.",
                    span, g)
            if name in g.names_in_scope():
                raise TacticError("name-clash",
                                  f"The name {name} is already in use.",
                                  span, g)
            body = substitute(t.body, t.var, Var(name))
            g = g.with_variable(name, sort).with_target(body)
            t = _surface(body, env)
    return (g,)


def _assume_that(g: Goal, f: Formula, label, env, span) -> tuple[Goal, ...]:
    t = _surface(g.target, env)
    if not isinstance(t, Implies):
        raise TacticError(
            "assume-on-non-implication",
            "`Assume that ...` can only be used to prove an implication (⇒). "
            "Use `Take ...` to introduce a variable.", span, g)
    if not _conv(g, f, t.lhs, env):
        raise TacticError(
            "wrong-assumption",
            f"This is not what must be assumed. "
            f"Expected ({formula_str(t.lhs)}).", span, g)
    try:
        g = g.with_hypothesis(t.lhs, "assumed", label)
    except KernelError as e:
        raise TacticError("name-clash", f"{e}.", span, g)
    return (g.with_target(t.rhs),)


def _choose(g: Goal, name: str, witness, env, span) -> tuple[Goal, ...]:
    t = _surface(g.target, env)
    if not isinstance(t, Exists):
        raise TacticError(
            "choose-on-non-exists",
            "`Choose ...` can only be used to prove a "
            "`there exists`-statement (∃).", span, g)
    try:
        s = term_sort(witness, g.var_sorts(), env)
    except SortMismatch as e:
        raise TacticError("sort", f"{e}.", span, g)
    if not coercible(s, t.sort):
        raise TacticError("sort",
                          f"The chosen value does not have type {t.sort}.",
                          span, g)
    if name in g.names_in_scope():
        raise TacticError("name-clash",
                          f"The name {name} is already in use.", span, g)
    g = g.with_variable(name, t.sort)
    g = g.with_hypothesis(Atom("=", Var(name), witness), "chosen")
    return (g.with_target(substitute(t.body, t.var, Var(name))),)


def _show_both(g: Goal, f: Formula, h: Formula, env, span) -> tuple[Goal, ...]:
    if not _conv(g, And(f, h), g.target, env):
        raise TacticError(
            "wrong-conjunction",
            f"`We show both ...` must state the goal's conjunction, "
            f"in order. The goal is ({formula_str(g.target)}).", span, g)
    return (g.with_target(f), g.with_target(h))


def _either_or(g: Goal, f: Formula, h: Formula, env, budget,
               span) -> tuple[Goal, ...]:
    if not auto.prove(g, Or(f, h), env, budget).ok:
        raise TacticError(
            "either-failed",
            "Could not find a proof that the first or the second "
            "statement holds.", span, g)
    out = []
    for disjunct in (f, h):
        sub = g.with_hypothesis(disjunct, "case")
        out.append(replace(sub, wrapper=Wrapper("case", disjunct)))
    return tuple(out)


def _unwrap(g: Goal, f: Formula, kind: str, span) -> tuple[Goal, ...]:
    wrong = {"case": "Wrong case specified.",
             "base_case": "Wrong base case specified.",
             "induction_step": "Wrong induction step specified."}
    missing = {"case": "No need to specify case.",
               "base_case": "No need to specify the base case.",
               "induction_step": "No need to specify the induction step."}
    if g.wrapper is None:
        raise TacticError("no-wrapper", missing[kind], span, g)
    assert g.wrapper.kind == kind  # the dispatcher guard guarantees this
    if not alpha_equal(g.wrapper.expected, f):
        raise TacticError("wrong-wrapper", wrong[kind], span, g)
    g = replace(g, wrapper=None)
    if not any(alpha_equal(h.statement, f) for h in g.hypotheses):
        g = g.with_hypothesis(f, "case")
    return (g,)


def _need_to_show(g: Goal, f: Formula, env, span) -> tuple[Goal, ...]:
    if g.wrapper is not None:  # necessarily the "expected" kind
        if not _conv(g, f, g.wrapper.expected, env):
            raise TacticError("wrong-wrapper", "Wrong goal specified.", span, g)
        return (replace(g, wrapper=None, target=f),)
    if not _conv(g, f, g.target, env):
        raise TacticError(
            "goal-mismatch",
            f"This is not what we need to show. "
            f"The goal is ({formula_str(g.target)}).", span, g)
    return (g.with_target(f),)


def _conclude_chain(g: Goal, chain: Chain, by, env, budget,
                    span) -> tuple[Goal, ...]:
    try:
        chains_mod.validate(chain, env, g.var_sorts())
    except (DirectionError, ChainSortError) as e:
        raise TacticError("chain", f"{e}.", span, g)
    gs = chains_mod.global_statement(chain)
    if not _conv(g, gs, g.target, env):
        # the global statement may strengthen the goal (e.g. 0 < a for 0 ≤ a)
        ctx = [unfold(h.statement, env, "all") for h in g.hypotheses]
        ctx.append(unfold(_resolve_chosen(g, gs), env, "all"))
        target = unfold(_resolve_chosen(g, g.target), env, "all")
        if auto.solve_linear(ctx, target, g.var_sorts()) != "valid":
            raise TacticError(
                "goal-mismatch",
                f"The chain's global statement ({formula_str(gs)}) does not "
                f"match the goal ({formula_str(g.target)}).", span, g)
    used_ref = False
    for index, atom in enumerate(chains_mod.atoms(chain), start=1):
        if by is not None:
            try:
                verdict = auto.prove_required(g, atom, by, env, budget)
            except auto.UnresolvedReference:
                raise TacticError("unknown-reference",
                                  f"Unknown lemma or hypothesis: {by}.",
                                  span, g)
            if verdict == "proof-found":
                used_ref = True
                continue
            if verdict == "lemma-unused":
                continue
        else:
            if auto.prove(g, atom, env, budget).ok:
                continue
        raise TacticError(
            "chain-link",
            f"Could not verify step {index} of the chain "
            f"({formula_str(atom)}).", span, g)
    if by is not None and not used_ref:
        raise TacticError(
            "lemma-unused",
            f"The statement holds, but the proof does not use {by}.", span, g)
    return ()


def _conclude_that(g: Goal, body, by, env, budget, span) -> tuple[Goal, ...]:
    if isinstance(body, Chain):
        return _conclude_chain(g, body, by, env, budget, span)
    if not _conv(g, body, g.target, env):
        raise TacticError(
            "goal-mismatch",
            f"This does not match the goal ({formula_str(g.target)}).",
            span, g)
    _prove_with_by(g, body, by, env, budget, span)
    return ()


def _it_holds_that(g: Goal, f: Formula, label, by, env, budget,
                   span) -> tuple[Goal, ...]:
    _prove_with_by(g, f, by, env, budget, span)
    try:
        return (g.with_hypothesis(f, "asserted", label),)
    except KernelError as e:
        raise TacticError("name-clash", f"{e}.", span, g)


def _suffices_to_show(g: Goal, f: Formula, by, env, budget,
                      span) -> tuple[Goal, ...]:
    strengthened = g.with_hypothesis(f, "asserted")
    try:
        _prove_with_by(strengthened, g.target, by, env, budget, span)
    except TacticError as e:
        if e.code == "automation":
            raise TacticError(
                "automation",
                f"The claimed statement does not suffice to prove the goal "
                f"({formula_str(g.target)}).", span, g)
        raise
    return (g.with_target(f),)


def _use_induction(g: Goal, name: str, env, span) -> tuple[Goal, ...]:
    t = _surface(g.target, env)
    if not (isinstance(t, ForAll) and t.sort == NAT):
        raise TacticError(
            "induction",
            "Induction can only be used to prove a `for all`-statement "
            "over ℕ.", span, g)
    p_n = substitute(t.body, t.var, Var(name))
    base = substitute(t.body, t.var, rat(0))
    step_stmt = ForAll(name, NAT,
                       Implies(p_n, substitute(t.body, t.var,
                                               Add(Var(name), rat(1)))))
    g_base = replace(g, target=base, wrapper=Wrapper("base_case", base))
    g_step = replace(g, target=step_stmt,
                     wrapper=Wrapper("induction_step", step_stmt))
    return (g_base, g_step)


def _occurs(f: Formula, name: str) -> bool:
    match f:
        case Pred(n, _):
            return n == name
        case Not(a):
            return _occurs(a, name)
        case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b):
            return _occurs(a, name) or _occurs(b, name)
        case ForAll(_, _, body) | Exists(_, _, body):
            return _occurs(body, name)
        case _:
            return False


def expand_definition(word: str, f: Formula, env: Environment,
                      span=None) -> tuple[str, ...]:
    """Unfold one named definition inside f; the proof state is unchanged
    and the unfolded formula is returned as an informational note."""
    internal = env.resolve_definition_name(word)
    if internal is None:
        raise TacticError("unknown-definition",
                          f"Unknown definition: {word}.", span)
    if not _occurs(f, internal):
        raise TacticError(
            "name-not-present",
            f"The definition of {word} does not occur in this statement.",
            span)
    return (formula_str(unfold(f, env, (internal,))),)


def help_notes(g: Goal, env: Environment) -> tuple[str, ...]:
    """One suggestion keyed on the head shape of the focused goal."""
    if g.wrapper is not None:
        return (wrapper_unwrap_line(g.wrapper),)
    t = _surface(g.target, env)
    match t:
        case ForAll(v, s, _):
            return (f"Take {v} : {s}.",)
        case Implies(a, _):
            return (f"Assume that ({formula_str(a)}).",)
        case Exists(v, _, _):
            return (f"Choose {v} := (...).",)
        case And(a, b):
            return (f"We show both ({formula_str(a)}) and ({formula_str(b)}).",)
        case Or(a, _):
            return (f"It suffices to show that ({formula_str(a)}).",
                    "Either disjunct may be chosen.")
        case _:
            return (f"We conclude that ({formula_str(g.target)}).",)


# ---------------------------------------------------------------------------
# Dispatcher


def _settle(goals, stack, needs_bullet) -> ProofState:
    """After a goal closes, hand the focus back up the bullet stack."""
    while stack:
        top = stack[-1]
        if len(goals) != top.base + top.remaining:
            break
        if top.remaining > 0:
            return ProofState(goals, stack, True)
        stack = stack[:-1]
    return ProofState(goals, stack, False)


def step(state: ProofState, sentence: Sentence, env: Environment,
         budget: auto.SearchBudget = auto.DEFAULT_BUDGET) -> TacticOutcome:
    """Apply one sentence to the proof state.

    Raises TacticError and leaves the state untouched on any failure.
    """
    kind = sentence.kind
    span = sentence.span
    if kind == "ProofBegin":
        return TacticOutcome(state)
    if kind == "LemmaHeader":
        raise TacticError("misplaced-lemma",
                          "A lemma header cannot appear inside a proof.", span)
    if kind == "Qed":
        if state.status == "complete":
            return TacticOutcome(state)
        raise TacticError("unfinished", "Proof is not finished.", span)
    if not state.goals:
        raise TacticError("no-goals", "The proof is already finished.", span)
    if kind == "Help":
        return TacticOutcome(state, help_notes(state.focused, env))
    if kind == "ExpandDefinition":
        word, f = sentence.payload
        return TacticOutcome(state, expand_definition(word, f, env, span))

    goals, stack, needs = state.goals, state.bullet_stack, state.needs_bullet
    if sentence.bullet is not None:
        if not needs:
            raise TacticError("bullet", "No bullet is needed here.", span)
        top = stack[-1]
        if sentence.bullet != top.marker:
            raise TacticError(
                "bullet",
                f"Expected a bullet `{top.marker}` to focus the next goal.",
                span)
        stack = stack[:-1] + (replace(top, remaining=top.remaining - 1),)
        needs = False

    g = goals[0]
    if g.wrapper is not None and kind != _UNWRAPPER[g.wrapper.kind]:
        raise TacticError("wrapped", wrapper_display(g.wrapper), span, g)
    if needs:
        raise TacticError(
            "bullet",
            f"Expected a bullet `{stack[-1].marker}` to focus the next goal.",
            span)

    p = sentence.payload
    match kind:
        case "Take":
            repl = _take(g, p[0], env, span)
        case "AssumeThat":
            repl = _assume_that(g, p[0], p[1], env, span)
        case "Choose":
            repl = _choose(g, p[0], p[1], env, span)
        case "ShowBoth":
            repl = _show_both(g, p[0], p[1], env, span)
        case "EitherOr":
            repl = _either_or(g, p[0], p[1], env, budget, span)
        case "Case":
            repl = _unwrap(g, p[0], "case", span)
        case "BaseCase":
            repl = _unwrap(g, p[0], "base_case", span)
        case "InductionStep":
            repl = _unwrap(g, p[0], "induction_step", span)
        case "NeedToShow":
            repl = _need_to_show(g, p[0], env, span)
        case "ConcludeThat":
            repl = _conclude_that(g, p[0], p[1], env, budget, span)
        case "ItHoldsThat":
            repl = _it_holds_that(g, p[0], p[1], p[2], env, budget, span)
        case "SufficesToShow":
            repl = _suffices_to_show(g, p[0], p[1], env, budget, span)
        case "UseInduction":
            repl = _use_induction(g, p[0], env, span)
        case _:
            raise TacticError("unknown-kind",
                              f"Cannot execute sentence kind {kind}.", span)

    goals = repl + goals[1:]
    if len(repl) > 1:
        depth = len(stack) + 1
        if depth > MAX_BULLET_DEPTH:
            raise TacticError(
                "bullet",
                f"Proofs cannot be nested more than {MAX_BULLET_DEPTH} "
                f"bullet levels deep.", span)
        frame = BulletFrame(bullet_marker(depth), len(repl),
                            len(goals) - len(repl))
        return TacticOutcome(ProofState(goals, stack + (frame,), True))
    if not repl:
        return TacticOutcome(_settle(goals, stack, needs))
    return TacticOutcome(ProofState(goals, stack, needs))
