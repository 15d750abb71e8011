"""Implicit automation: linear-arithmetic validity, hint databases, and
bounded backward chaining.

The leaf decision procedure is exact-rational Fourier-Motzkin elimination.
Statements whose head is a logical operator are "shielded": the engine
refuses to decompose them and only accepts direct matches against a
hypothesis or a weak-collection lemma (plus plain linear arithmetic when
no opaque predicates are involved).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import chains as chains_mod
from .kernel import (
    NAT, Add, And, App, Atom, Div, Environment, Exists, ForAll, Formula,
    Goal, Iff, Implies, InSet, Interval, Mul, Neg, Not, Or, Pred, Rat, Sort,
    Sub, Term, Var, convertible, formula_str, interval_bounds, substitute,
    term_free_vars, term_str, unfold,
)


@dataclass(frozen=True, slots=True)
class HintDatabase:
    name: str
    lemmas: tuple[tuple[str, Formula], ...]


@dataclass(frozen=True, slots=True)
class CollectionConfig:
    main: tuple[str, ...] = ()
    weak: tuple[str, ...] = ()
    core: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class SearchBudget:
    max_depth: int = 3
    max_nodes: int = 10000


DEFAULT_BUDGET = SearchBudget()


class UnresolvedReference(Exception):
    def __init__(self, ref: str):
        super().__init__(f"unknown lemma or hypothesis: {ref}")
        self.ref = ref


# ---------------------------------------------------------------------------
# Linear constraints and Fourier-Motzkin elimination
#
# A constraint is (coeffs, const, strict) and denotes
#     sum(c * x for x, c in coeffs) + const  >= 0   (or > 0 when strict).

Constraint = tuple[tuple[tuple[str, Fraction], ...], Fraction, bool]


def _make_constraint(coeffs: dict[str, Fraction], const: Fraction,
                     strict: bool) -> Constraint:
    items = tuple(sorted((k, v) for k, v in coeffs.items() if v != 0))
    return (items, const, strict)


def _canonical(c: Constraint) -> Constraint:
    coeffs, const, strict = c
    if not coeffs:
        return c
    scale = abs(coeffs[0][1])
    return (tuple((k, v / scale) for k, v in coeffs), const / scale, strict)


class NonLinear(Exception):
    pass


def _linearize(t: Term) -> tuple[dict[str, Fraction], Fraction]:
    """Term -> linear combination; nonlinear subterms (products of two
    non-constant terms, function applications) become opaque pseudo-
    variables keyed by their printed form, which keeps verdicts sound."""
    match t:
        case Rat(v):
            return {}, v
        case Var(name):
            return {name: Fraction(1)}, Fraction(0)
        case Neg(a):
            ca, ka = _linearize(a)
            return {k: -v for k, v in ca.items()}, -ka
        case Add(a, b):
            ca, ka = _linearize(a)
            cb, kb = _linearize(b)
            out = dict(ca)
            for k, v in cb.items():
                out[k] = out.get(k, Fraction(0)) + v
            return out, ka + kb
        case Sub(a, b):
            ca, ka = _linearize(a)
            cb, kb = _linearize(b)
            out = dict(ca)
            for k, v in cb.items():
                out[k] = out.get(k, Fraction(0)) - v
            return out, ka - kb
        case Mul(a, b):
            ca, ka = _linearize(a)
            cb, kb = _linearize(b)
            if not ca:
                return {k: v * ka for k, v in cb.items()}, ka * kb
            if not cb:
                return {k: v * kb for k, v in ca.items()}, ka * kb
            return {term_str(t): Fraction(1)}, Fraction(0)
        case Div(a, b):
            if not isinstance(b, Rat) or b.value == 0:
                raise NonLinear(term_str(t))
            ca, ka = _linearize(a)
            return {k: v / b.value for k, v in ca.items()}, ka / b.value
        case App():
            return {term_str(t): Fraction(1)}, Fraction(0)
        case Interval():
            raise NonLinear(term_str(t))
    raise NonLinear(repr(t))


def _atom_constraints(rel: str, lhs: Term, rhs: Term) -> list[Constraint]:
    cl, kl = _linearize(lhs)
    cr, kr = _linearize(rhs)

    def diff(big_c, big_k, small_c, small_k):
        out = dict(big_c)
        for k, v in small_c.items():
            out[k] = out.get(k, Fraction(0)) - v
        return out, big_k - small_k

    if rel in ("≤", "<"):
        c, k = diff(cr, kr, cl, kl)
        return [_make_constraint(c, k, rel == "<")]
    if rel in ("≥", ">"):
        c, k = diff(cl, kl, cr, kr)
        return [_make_constraint(c, k, rel == ">")]
    if rel == "=":
        c1, k1 = diff(cr, kr, cl, kl)
        c2, k2 = diff(cl, kl, cr, kr)
        return [_make_constraint(c1, k1, False), _make_constraint(c2, k2, False)]
    raise NonLinear(rel)


def fm_unsatisfiable(constraints: Iterable[Constraint]) -> bool:
    """True iff the conjunction has no solution over the ordered field of
    rationals.  Complete for linear constraints."""
    pending = {_canonical(c) for c in constraints}

    def ground_violated(c: Constraint) -> bool:
        coeffs, const, strict = c
        if coeffs:
            return False
        return const < 0 or (strict and const == 0)

    while True:
        for c in pending:
            if ground_violated(c):
                return True
        variables = sorted({k for coeffs, _, _ in pending for k, _ in coeffs})
        if not variables:
            return False
        # eliminate the variable with the cheapest positive*negative fanout
        def cost(v: str) -> int:
            pos = neg = 0
            for coeffs, _, _ in pending:
                d = dict(coeffs)
                c = d.get(v, Fraction(0))
                if c > 0:
                    pos += 1
                elif c < 0:
                    neg += 1
            return pos * neg
        var = min(variables, key=lambda v: (cost(v), v))
        pos, neg, rest = [], [], set()
        for c in pending:
            coef = dict(c[0]).get(var, Fraction(0))
            if coef > 0:
                pos.append(c)
            elif coef < 0:
                neg.append(c)
            else:
                rest.add(c)
        for pc in pos:
            pd, pk, ps = dict(pc[0]), pc[1], pc[2]
            cp = pd[var]
            for nc in neg:
                nd, nk, ns = dict(nc[0]), nc[1], nc[2]
                cn = nd[var]
                out: dict[str, Fraction] = {}
                for k, v in pd.items():
                    out[k] = out.get(k, Fraction(0)) + v * (-cn)
                for k, v in nd.items():
                    out[k] = out.get(k, Fraction(0)) + v * cp
                rest.add(_canonical(_make_constraint(out, pk * (-cn) + nk * cp,
                                                     ps or ns)))
        pending = rest


# ---------------------------------------------------------------------------
# Quantifier-free validity


class _Blowup(Exception):
    pass


def quantifier_free(f: Formula) -> bool:
    match f:
        case ForAll() | Exists():
            return False
        case Not(a):
            return quantifier_free(a)
        case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b):
            return quantifier_free(a) and quantifier_free(b)
        case _:
            return True


# literal: (positive: bool, formula-atom)
_Clause = list[tuple[bool, Formula]]


def _nnf_dnf(f: Formula, positive: bool, cap: int) -> list[_Clause]:
    match f:
        case Not(a):
            return _nnf_dnf(a, not positive, cap)
        case Iff(a, b):
            return _nnf_dnf(And(Implies(a, b), Implies(b, a)), positive, cap)
        case Implies(a, b):
            return _nnf_dnf(Or(Not(a), b), positive, cap)
        case And(a, b):
            if positive:
                left = _nnf_dnf(a, True, cap)
                right = _nnf_dnf(b, True, cap)
                if len(left) * len(right) > cap:
                    raise _Blowup
                return [x + y for x in left for y in right]
            return _nnf_dnf(a, False, cap) + _nnf_dnf(b, False, cap)
        case Or(a, b):
            if positive:
                return _nnf_dnf(a, True, cap) + _nnf_dnf(b, True, cap)
            left = _nnf_dnf(a, False, cap)
            right = _nnf_dnf(b, False, cap)
            if len(left) * len(right) > cap:
                raise _Blowup
            return [x + y for x in left for y in right]
        case InSet(e, s) if isinstance(s, Interval):
            return _nnf_dnf(interval_bounds(e, s), positive, cap)
        case Atom(rel, a, b):
            if positive:
                return [[(True, f)]]
            flipped = {"=": None, "<": "≥", "≤": ">", ">": "≤", "≥": "<"}[rel]
            if flipped is None:
                return [[(True, Atom("<", a, b))], [(True, Atom(">", a, b))]]
            return [[(True, Atom(flipped, a, b))]]
        case Pred() | InSet():
            return [[(positive, f)]]
        case ForAll() | Exists():
            raise _Blowup  # outside the quantifier-free fragment
    raise _Blowup


def solve_linear(hyps: Iterable[Formula], goal: Formula,
                 var_sorts: Optional[dict[str, Sort]] = None,
                 max_clauses: int = 4096, max_opaque: int = 8) -> str:
    """Validity of (/\\ hyps) => goal over linear rational arithmetic.

    Returns "valid" or "unknown"; never unsound.  Non-arithmetic atoms are
    treated as opaque propositional atoms; nonlinear subterms become
    opaque pseudo-variables.
    """
    if not quantifier_free(goal):
        return "unknown"
    # quantified hypotheses are outside the fragment; dropping them is sound
    hyps = [h for h in hyps if quantifier_free(h)]
    query: Formula = Not(goal)
    for h in hyps:
        query = And(h, query)
    try:
        clauses = _nnf_dnf(query, True, max_clauses)
    except _Blowup:
        return "unknown"

    nat_vars = [v for v, s in (var_sorts or {}).items() if s == NAT]
    opaque_names: set[str] = set()
    for clause in clauses:
        for positive, atom in clause:
            if not isinstance(atom, Atom):
                opaque_names.add(formula_str(atom))
    if len(opaque_names) > max_opaque:
        return "unknown"

    for clause in clauses:
        constraints: list[Constraint] = []
        opaque: dict[str, bool] = {}
        unknown_atom = False
        contradiction = False
        for positive, atom in clause:
            if isinstance(atom, Atom):
                try:
                    constraints.extend(_atom_constraints(atom.rel, atom.lhs, atom.rhs))
                except NonLinear:
                    unknown_atom = True
                continue
            key = formula_str(atom)
            if key in opaque and opaque[key] != positive:
                contradiction = True
                break
            opaque[key] = positive
        if contradiction:
            continue
        for v in nat_vars:
            constraints.append(_make_constraint({v: Fraction(1)}, Fraction(0), False))
        if fm_unsatisfiable(constraints):
            continue
        # this disjunct might be satisfiable: the implication is not proven
        return "unknown"
    return "valid"


# ---------------------------------------------------------------------------
# Shielding


def is_shielded(f: Formula, env: Optional[Environment] = None,
                surface: bool = False) -> bool:
    """True iff the statement's head is a logical operator.

    With surface=True, interval membership counts as an atom (its sugar is
    not expanded first); this is the mode the prover uses, so statements
    like `3 ∈ [0,4)` are not shielded even though they unfold to a
    conjunction.
    """
    match f:
        case ForAll() | Exists() | Implies() | Iff() | And() | Or() | Not():
            return True
        case Atom():
            return False
        case InSet(e, s):
            if surface or not isinstance(s, Interval):
                return False
            return True  # unfolds to a conjunction
        case Pred(name, _):
            if env is not None and name in env.definitions:
                body = unfold(f, env, (name,))
                return is_shielded(body, env, surface)
            return False
    return False


def _purely_arithmetic(f: Formula) -> bool:
    match f:
        case Atom():
            return True
        case InSet(_, s):
            return isinstance(s, Interval)
        case Not(a):
            return _purely_arithmetic(a)
        case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b):
            return _purely_arithmetic(a) and _purely_arithmetic(b)
        case _:
            return False


# ---------------------------------------------------------------------------
# First-order matching (lemma conclusions against targets)


def _match_term(pat: Term, tgt: Term, meta: frozenset[str],
                subst: dict[str, Term], la: dict, lb: dict) -> bool:
    if isinstance(pat, Var) and pat.name in meta and pat.name not in la:
        if pat.name in subst:
            return subst[pat.name] == tgt
        if term_free_vars(tgt) & set(lb):
            return False  # would capture a bound variable
        subst[pat.name] = tgt
        return True
    if type(pat) is not type(tgt):
        return False
    match pat, tgt:
        case Var(x), Var(y):
            ia, ib = la.get(x), lb.get(y)
            if ia is None and ib is None:
                return x == y
            return ia == ib
        case Rat(u), Rat(v):
            return u == v
        case Neg(u), Neg(v):
            return _match_term(u, v, meta, subst, la, lb)
        case (Add(u1, u2), Add(v1, v2)) | (Sub(u1, u2), Sub(v1, v2)) | \
             (Mul(u1, u2), Mul(v1, v2)) | (Div(u1, u2), Div(v1, v2)):
            return _match_term(u1, v1, meta, subst, la, lb) and \
                _match_term(u2, v2, meta, subst, la, lb)
        case App(f, xs), App(g, ys):
            return f == g and len(xs) == len(ys) and all(
                _match_term(x, y, meta, subst, la, lb) for x, y in zip(xs, ys))
        case Interval(l1, c1, h1, d1), Interval(l2, c2, h2, d2):
            return c1 == c2 and d1 == d2 and \
                _match_term(l1, l2, meta, subst, la, lb) and \
                _match_term(h1, h2, meta, subst, la, lb)
    return False


def _match_formula(pat: Formula, tgt: Formula, meta: frozenset[str],
                   subst: dict[str, Term], la: dict, lb: dict,
                   depth: int) -> bool:
    if type(pat) is not type(tgt):
        return False
    match pat, tgt:
        case Atom(r1, x1, y1), Atom(r2, x2, y2):
            return r1 == r2 and _match_term(x1, x2, meta, subst, la, lb) and \
                _match_term(y1, y2, meta, subst, la, lb)
        case InSet(e1, s1), InSet(e2, s2):
            return _match_term(e1, e2, meta, subst, la, lb) and \
                _match_term(s1, s2, meta, subst, la, lb)
        case Pred(n1, xs), Pred(n2, ys):
            return n1 == n2 and len(xs) == len(ys) and all(
                _match_term(x, y, meta, subst, la, lb) for x, y in zip(xs, ys))
        case Not(x), Not(y):
            return _match_formula(x, y, meta, subst, la, lb, depth)
        case (And(x1, y1), And(x2, y2)) | (Or(x1, y1), Or(x2, y2)) | \
             (Implies(x1, y1), Implies(x2, y2)) | (Iff(x1, y1), Iff(x2, y2)):
            return _match_formula(x1, x2, meta, subst, la, lb, depth) and \
                _match_formula(y1, y2, meta, subst, la, lb, depth)
        case (ForAll(v1, s1, b1), ForAll(v2, s2, b2)) | \
             (Exists(v1, s1, b1), Exists(v2, s2, b2)):
            if s1 != s2:
                return False
            la2, lb2 = dict(la), dict(lb)
            la2[v1] = depth
            lb2[v2] = depth
            return _match_formula(b1, b2, meta, subst, la2, lb2, depth + 1)
    return False


def match_conclusion(pattern: Formula, target: Formula,
                     meta: frozenset[str]) -> Optional[dict[str, Term]]:
    subst: dict[str, Term] = {}
    if _match_formula(pattern, target, meta, subst, {}, {}, 0):
        return subst
    return None


def lemma_parts(stmt: Formula) -> tuple[tuple[tuple[str, Sort], ...],
                                        tuple[Formula, ...], Formula]:
    """Split a Horn-style lemma into (∀-prefix vars, premises, conclusion)."""
    params: list[tuple[str, Sort]] = []
    premises: list[Formula] = []
    f = stmt
    while True:
        if isinstance(f, ForAll):
            params.append((f.var, f.sort))
            f = f.body
        elif isinstance(f, Implies):
            premises.append(f.lhs)
            f = f.rhs
        else:
            break
    return tuple(params), tuple(premises), f


# ---------------------------------------------------------------------------
# Proof search


@dataclass
class ProveResult:
    ok: bool
    used: frozenset[str] = frozenset()
    deepest: Optional[Formula] = None


class _Search:
    def __init__(self, goal: Goal, env: Environment, budget: SearchBudget):
        self.env = env
        self.budget = budget
        self.nodes = 0
        self.goal = goal
        self.var_sorts = goal.var_sorts()
        self.deepest: Optional[Formula] = None
        self.hyps = [(h.label, h.statement) for h in goal.hypotheses]
        self.solver_hyps = [unfold(s, env, "all") for _, s in self.hyps]
        self.main_lemmas = env.collection_lemmas(("main", "core"))
        self.weak_lemmas = env.collection_lemmas(("weak", "core"))

    def _spend(self) -> bool:
        self.nodes += 1
        return self.nodes <= self.budget.max_nodes

    def _solver(self, target: Formula,
                extra_hyps: tuple[Formula, ...] = ()) -> bool:
        unfolded = unfold(target, self.env, "all")
        hyps = self.solver_hyps + [unfold(h, self.env, "all") for h in extra_hyps]
        return solve_linear(hyps, unfolded, self.var_sorts) == "valid"

    def _solver_without(self, drop_label: str, target: Formula) -> bool:
        hyps = [unfold(s, self.env, "all") for lbl, s in self.hyps
                if lbl != drop_label]
        return solve_linear(hyps, unfold(target, self.env, "all"),
                            self.var_sorts) == "valid"

    def _hyp_match(self, target: Formula) -> Optional[str]:
        for label, stmt in self.hyps:
            if convertible(stmt, target, self.env):
                return label
        return None

    def _apply_lemma(self, label: str, stmt: Formula, target: Formula,
                     depth: int) -> Optional[frozenset[str]]:
        params, premises, conclusion = lemma_parts(stmt)
        meta = frozenset(name for name, _ in params)
        for candidate in (target, unfold(target, self.env, "all")):
            subst = match_conclusion(conclusion, candidate, meta)
            if subst is None:
                continue
            if not meta <= set(subst):
                continue  # premise-only metavariables: no enumeration
            used = {label}
            ok = True
            for premise in premises:
                inst = premise
                for name, rep in subst.items():
                    inst = substitute(inst, name, rep)
                sub = self.attempt(inst, depth - 1)
                if sub is None:
                    ok = False
                    break
                used |= sub
            if ok:
                return frozenset(used)
        return None

    def attempt(self, target: Formula, depth: int) -> Optional[frozenset[str]]:
        """Backward-chaining step; returns the set of used labels or None."""
        if not self._spend():
            return None
        shielded = is_shielded(target, self.env, surface=True)
        label = self._hyp_match(target)
        if label is not None:
            return frozenset({label})
        if shielded:
            for lbl, stmt in self.weak_lemmas:
                if convertible(stmt, target, self.env):
                    return frozenset({lbl})
                if depth > 0:
                    used = self._apply_lemma(lbl, stmt, target, depth)
                    if used is not None:
                        return used
            if _purely_arithmetic(unfold(target, self.env, "all")) and \
                    self._solver(target):
                return frozenset()
        else:
            if self._solver(target):
                return frozenset()
            if depth > 0:
                for lbl, stmt in self.main_lemmas:
                    used = self._apply_lemma(lbl, stmt, target, depth)
                    if used is not None:
                        return used
        if self.deepest is None:
            self.deepest = target
        return None


def prove(goal: Goal, target: Formula, env: Environment,
          budget: SearchBudget = DEFAULT_BUDGET) -> ProveResult:
    """Try to establish `target` from the goal's context."""
    search = _Search(goal, env, budget)
    for depth in range(1, budget.max_depth + 1):
        search.deepest = None
        used = search.attempt(target, depth)
        if used is not None:
            return ProveResult(True, used)
        if search.nodes > budget.max_nodes:
            break
    return ProveResult(False, deepest=search.deepest)


class _RequiredSearch(_Search):
    """Search that only accepts proofs whose path involves one required
    lemma or hypothesis; the required item is tried first at every node."""

    def __init__(self, goal: Goal, env: Environment, budget: SearchBudget,
                 ref: str, ref_kind: str, ref_stmt: Formula):
        super().__init__(goal, env, budget)
        self.ref = ref
        self.ref_kind = ref_kind
        self.ref_stmt = ref_stmt

    def attempt_required(self, target: Formula, depth: int) -> Optional[frozenset[str]]:
        if not self._spend():
            return None
        if self.ref_kind == "hyp":
            if convertible(self.ref_stmt, target, self.env):
                return frozenset({self.ref})
            if self._solver(target) and not self._solver_without(self.ref, target):
                return frozenset({self.ref})
        else:
            if is_shielded(target, self.env, surface=True) and \
                    convertible(self.ref_stmt, target, self.env):
                return frozenset({self.ref})
            used = self._apply_lemma(self.ref, self.ref_stmt, target, max(depth, 1))
            if used is not None:
                return used
        if depth > 0:
            pool = self.weak_lemmas if is_shielded(target, self.env, surface=True) \
                else self.main_lemmas
            for lbl, stmt in pool:
                params, premises, conclusion = lemma_parts(stmt)
                meta = frozenset(name for name, _ in params)
                subst = match_conclusion(conclusion, target, meta)
                if subst is None or not meta <= set(subst):
                    continue
                insts = []
                for premise in premises:
                    inst = premise
                    for name, rep in subst.items():
                        inst = substitute(inst, name, rep)
                    insts.append(inst)
                # the required item must carry at least one premise
                for i, inst in enumerate(insts):
                    used_i = self.attempt_required(inst, depth - 1)
                    if used_i is None:
                        continue
                    rest_ok = True
                    total = set(used_i) | {lbl}
                    for j, other in enumerate(insts):
                        if j == i:
                            continue
                        sub = self.attempt(other, depth - 1)
                        if sub is None:
                            rest_ok = False
                            break
                        total |= sub
                    if rest_ok:
                        return frozenset(total)
        return None


def prove_required(goal: Goal, target: Formula, ref: str, env: Environment,
                   budget: SearchBudget = DEFAULT_BUDGET) -> str:
    """Returns "proof-found", "lemma-unused" or "failure".

    Raises UnresolvedReference if `ref` names neither a hypothesis in the
    goal nor a lemma in the environment.
    """
    hyp = next((h for h in goal.hypotheses if h.label == ref), None)
    if hyp is not None:
        ref_kind, ref_stmt = "hyp", hyp.statement
    else:
        stmt = env.lemma(ref)
        if stmt is None:
            raise UnresolvedReference(ref)
        ref_kind, ref_stmt = "lemma", stmt
    for depth in range(1, budget.max_depth + 1):
        search = _RequiredSearch(goal, env, budget, ref, ref_kind, ref_stmt)
        if search.attempt_required(target, depth) is not None:
            return "proof-found"
    if prove(goal, target, env, budget).ok:
        return "lemma-unused"
    return "failure"


def prove_chain(goal: Goal, chain: chains_mod.Chain, env: Environment,
                budget: SearchBudget = DEFAULT_BUDGET):
    """Prove every link independently; blame the first failing link.

    Returns (True, None, None) or (False, 1-based link index, link atom).
    """
    for index, atom in enumerate(chains_mod.atoms(chain), start=1):
        if not prove(goal, atom, env, budget).ok:
            return False, index, atom
    return True, None, None
