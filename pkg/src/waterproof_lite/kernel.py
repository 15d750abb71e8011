"""Logical kernel: sorted first-order terms and formulas, goals, proof states.

Every value in this module is immutable after construction and every
operation is a pure function, so kernel values can be shared freely
between concurrent checking jobs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Union


# ---------------------------------------------------------------------------
# Sorts


@dataclass(frozen=True, slots=True)
class Sort:
    name: str

    def __str__(self) -> str:
        return self.name


REAL = Sort("ℝ")
INT = Sort("ℤ")
NAT = Sort("ℕ")
PROP = Sort("Prop")

_NUMERIC_ORDER = {NAT: 0, INT: 1, REAL: 2}


def is_numeric(s: Sort) -> bool:
    return s in _NUMERIC_ORDER


def coercible(src: Sort, dst: Sort) -> bool:
    """ℕ ↪ ℤ ↪ ℝ is the only built-in coercion path."""
    if src == dst:
        return True
    if is_numeric(src) and is_numeric(dst):
        return _NUMERIC_ORDER[src] <= _NUMERIC_ORDER[dst]
    return False


def numeric_join(a: Sort, b: Sort) -> Sort:
    if not (is_numeric(a) and is_numeric(b)):
        raise SortMismatch(f"cannot combine sorts {a} and {b}")
    return a if _NUMERIC_ORDER[a] >= _NUMERIC_ORDER[b] else b


# ---------------------------------------------------------------------------
# Errors


class KernelError(Exception):
    pass


class SortMismatch(KernelError):
    pass


class UnknownDefinition(KernelError):
    def __init__(self, name: str):
        super().__init__(f"unknown definition: {name}")
        self.name = name


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Rat:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Add:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True, slots=True)
class Sub:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True, slots=True)
class Mul:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True, slots=True)
class Div:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fn: str
    args: tuple["Term", ...]


@dataclass(frozen=True, slots=True)
class Interval:
    """An interval literal such as [0,4); used as a set-valued term."""

    lo: "Term"
    lo_closed: bool
    hi: "Term"
    hi_closed: bool


Term = Union[Var, Rat, Neg, Add, Sub, Mul, Div, App, Interval]


def rat(n, d=1) -> Rat:
    return Rat(Fraction(n, d))


# ---------------------------------------------------------------------------
# Formulas


RELS = ("=", "<", "≤", ">", "≥")


@dataclass(frozen=True, slots=True)
class Atom:
    rel: str
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.rel not in RELS:
            raise KernelError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True, slots=True)
class InSet:
    """Set membership, e.g. x ∈ [0,4).

    When the set is an interval literal this is sugar for the conjunction
    of the two bound comparisons and is removed by `unfold`.
    """

    elem: Term
    the_set: Term


@dataclass(frozen=True, slots=True)
class Pred:
    """Predicate or defined-notion application.

    If `name` is a definition in the Environment, `unfold` replaces the
    node by the definition body; otherwise it is an opaque atom.
    """

    name: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    sort: Sort
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    sort: Sort
    body: "Formula"


Formula = Union[Atom, InSet, Pred, Not, And, Or, Implies, Iff, ForAll, Exists]

BINARY = (And, Or, Implies, Iff)
QUANT = (ForAll, Exists)


def in_interval(t: Term, lo: Term, lo_closed: bool, hi: Term, hi_closed: bool) -> InSet:
    return InSet(t, Interval(lo, lo_closed, hi, hi_closed))


def interval_bounds(elem: Term, iv: Interval) -> And:
    lo_rel = "≤" if iv.lo_closed else "<"
    hi_rel = "≤" if iv.hi_closed else "<"
    return And(Atom(lo_rel, iv.lo, elem), Atom(hi_rel, elem, iv.hi))


# ---------------------------------------------------------------------------
# Free variables and substitution


def term_free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Rat():
            return frozenset()
        case Neg(a):
            return term_free_vars(a)
        case Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b):
            return term_free_vars(a) | term_free_vars(b)
        case App(_, args):
            out: frozenset[str] = frozenset()
            for a in args:
                out |= term_free_vars(a)
            return out
        case Interval(lo, _, hi, _):
            return term_free_vars(lo) | term_free_vars(hi)
    raise KernelError(f"not a term: {t!r}")


def free_vars(f: Formula) -> frozenset[str]:
    match f:
        case Atom(_, a, b):
            return term_free_vars(a) | term_free_vars(b)
        case InSet(e, s):
            return term_free_vars(e) | term_free_vars(s)
        case Pred(_, args):
            out: frozenset[str] = frozenset()
            for a in args:
                out |= term_free_vars(a)
            return out
        case Not(a):
            return free_vars(a)
        case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b):
            return free_vars(a) | free_vars(b)
        case ForAll(v, _, body) | Exists(v, _, body):
            return free_vars(body) - {v}
    raise KernelError(f"not a formula: {f!r}")


PRIME = "′"


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Smallest prime-suffixed variant of `base` not in `avoid`."""
    avoid = set(avoid)
    name = base
    while name in avoid:
        name += PRIME
    return name


def substitute_term(t: Term, var: str, rep: Term) -> Term:
    match t:
        case Var(name):
            return rep if name == var else t
        case Rat():
            return t
        case Neg(a):
            return Neg(substitute_term(a, var, rep))
        case Add(a, b):
            return Add(substitute_term(a, var, rep), substitute_term(b, var, rep))
        case Sub(a, b):
            return Sub(substitute_term(a, var, rep), substitute_term(b, var, rep))
        case Mul(a, b):
            return Mul(substitute_term(a, var, rep), substitute_term(b, var, rep))
        case Div(a, b):
            return Div(substitute_term(a, var, rep), substitute_term(b, var, rep))
        case App(fn, args):
            return App(fn, tuple(substitute_term(a, var, rep) for a in args))
        case Interval(lo, lc, hi, hc):
            return Interval(substitute_term(lo, var, rep), lc, substitute_term(hi, var, rep), hc)
    raise KernelError(f"not a term: {t!r}")


def rename_bound(f: Formula, old: str, new: str) -> Formula:
    """Rename the binder of `f` (a quantifier binding `old`) to `new`."""
    assert isinstance(f, QUANT) and f.var == old
    body = substitute(f.body, old, Var(new))
    return type(f)(new, f.sort, body)


def substitute(f: Formula, var: str, rep: Term) -> Formula:
    """Capture-avoiding substitution of `rep` for free occurrences of `var`."""
    match f:
        case Atom(rel, a, b):
            return Atom(rel, substitute_term(a, var, rep), substitute_term(b, var, rep))
        case InSet(e, s):
            return InSet(substitute_term(e, var, rep), substitute_term(s, var, rep))
        case Pred(name, args):
            return Pred(name, tuple(substitute_term(a, var, rep) for a in args))
        case Not(a):
            return Not(substitute(a, var, rep))
        case And(a, b):
            return And(substitute(a, var, rep), substitute(b, var, rep))
        case Or(a, b):
            return Or(substitute(a, var, rep), substitute(b, var, rep))
        case Implies(a, b):
            return Implies(substitute(a, var, rep), substitute(b, var, rep))
        case Iff(a, b):
            return Iff(substitute(a, var, rep), substitute(b, var, rep))
        case ForAll(v, s, body) | Exists(v, s, body):
            cls = type(f)
            if v == var:
                return f
            if v in term_free_vars(rep) and var in free_vars(body):
                v2 = fresh_name(v, term_free_vars(rep) | free_vars(body))
                body = substitute(body, v, Var(v2))
                v = v2
            return cls(v, s, substitute(body, var, rep))
    raise KernelError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Alpha equality


def _alpha_term(a: Term, b: Term, la: dict[str, int], lb: dict[str, int]) -> bool:
    if type(a) is not type(b):
        return False
    match a, b:
        case Var(x), Var(y):
            ia, ib = la.get(x), lb.get(y)
            if ia is None and ib is None:
                return x == y
            return ia == ib
        case Rat(u), Rat(v):
            return u == v
        case Neg(u), Neg(v):
            return _alpha_term(u, v, la, lb)
        case (Add(u1, u2), Add(v1, v2)) | (Sub(u1, u2), Sub(v1, v2)) | \
             (Mul(u1, u2), Mul(v1, v2)) | (Div(u1, u2), Div(v1, v2)):
            return _alpha_term(u1, v1, la, lb) and _alpha_term(u2, v2, la, lb)
        case App(f, xs), App(g, ys):
            return f == g and len(xs) == len(ys) and all(
                _alpha_term(x, y, la, lb) for x, y in zip(xs, ys))
        case Interval(l1, c1, h1, d1), Interval(l2, c2, h2, d2):
            return c1 == c2 and d1 == d2 and _alpha_term(l1, l2, la, lb) and \
                _alpha_term(h1, h2, la, lb)
    return False


def _alpha(a: Formula, b: Formula, la: dict[str, int], lb: dict[str, int], depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a, b:
        case Atom(r1, x1, y1), Atom(r2, x2, y2):
            return r1 == r2 and _alpha_term(x1, x2, la, lb) and _alpha_term(y1, y2, la, lb)
        case InSet(e1, s1), InSet(e2, s2):
            return _alpha_term(e1, e2, la, lb) and _alpha_term(s1, s2, la, lb)
        case Pred(n1, xs), Pred(n2, ys):
            return n1 == n2 and len(xs) == len(ys) and all(
                _alpha_term(x, y, la, lb) for x, y in zip(xs, ys))
        case Not(x), Not(y):
            return _alpha(x, y, la, lb, depth)
        case (And(x1, y1), And(x2, y2)) | (Or(x1, y1), Or(x2, y2)) | \
             (Implies(x1, y1), Implies(x2, y2)) | (Iff(x1, y1), Iff(x2, y2)):
            return _alpha(x1, x2, la, lb, depth) and _alpha(y1, y2, la, lb, depth)
        case (ForAll(v1, s1, b1), ForAll(v2, s2, b2)) | (Exists(v1, s1, b1), Exists(v2, s2, b2)):
            if s1 != s2:
                return False
            la2 = dict(la)
            lb2 = dict(lb)
            la2[v1] = depth
            lb2[v2] = depth
            return _alpha(b1, b2, la2, lb2, depth + 1)
    return False


def alpha_equal(f: Formula, g: Formula) -> bool:
    """Syntactic equality up to renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


# ---------------------------------------------------------------------------
# Environment


@dataclass(frozen=True, slots=True)
class Definition:
    name: str
    params: tuple[tuple[str, Sort], ...]
    body: Formula
    opaque: bool = False


@dataclass(frozen=True, slots=True)
class Notation:
    """Multi-word infix display notation: `A <words> B` parses as name(B, A)."""

    words: tuple[str, ...]
    name: str


@dataclass(frozen=True, slots=True)
class Environment:
    sorts: frozenset[str] = frozenset()
    definitions: dict[str, Definition] = field(default_factory=dict)
    notations: tuple[Notation, ...] = ()
    functions: dict[str, int] = field(default_factory=dict)
    databases: dict[str, dict[str, Formula]] = field(default_factory=dict)
    collections: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: {"main": (), "weak": (), "core": ()})

    def lemma(self, label: str) -> Optional[Formula]:
        for db in self.databases.values():
            if label in db:
                return db[label]
        return None

    def collection_lemmas(self, names: Iterable[str]) -> list[tuple[str, Formula]]:
        seen = set()
        out = []
        for coll in names:
            for db_name in self.collections.get(coll, ()):
                for label, stmt in self.databases.get(db_name, {}).items():
                    if label not in seen:
                        seen.add(label)
                        out.append((label, stmt))
        return out

    def resolve_definition_name(self, word: str) -> Optional[str]:
        """Resolve a display word (e.g. "supremum") to an internal name."""
        if word in self.definitions:
            return word
        for notation in self.notations:
            if word in notation.words and notation.name in self.definitions:
                return notation.name
        return None


EMPTY_ENV = Environment()


# ---------------------------------------------------------------------------
# Definitional unfolding


def _selected(name: str, env: Environment, which) -> bool:
    d = env.definitions.get(name)
    if d is None:
        return False
    if which == "all":
        return not d.opaque
    return name in which


def unfold(f: Formula, env: Environment, which="all") -> Formula:
    """Replace selected definition applications by their instantiated bodies.

    `which` is "all" or an iterable of definition names.  With "all",
    interval-membership sugar is unfolded as well and opaque definitions
    are kept folded.
    """
    if which != "all":
        which = frozenset(which)
        for name in which:
            if name not in env.definitions:
                raise UnknownDefinition(name)
    return _unfold(f, env, which)


def _unfold(f: Formula, env: Environment, which) -> Formula:
    match f:
        case Atom():
            return f
        case InSet(e, s):
            if which == "all" and isinstance(s, Interval):
                return _unfold(interval_bounds(e, s), env, which)
            return f
        case Pred(name, args):
            if _selected(name, env, which):
                d = env.definitions[name]
                if len(args) != len(d.params):
                    raise KernelError(
                        f"definition {name} expects {len(d.params)} arguments, got {len(args)}")
                body = d.body
                for (p, _), a in zip(d.params, args):
                    body = substitute(body, p, a)
                return _unfold(body, env, which)
            return f
        case Not(a):
            return Not(_unfold(a, env, which))
        case And(a, b):
            return And(_unfold(a, env, which), _unfold(b, env, which))
        case Or(a, b):
            return Or(_unfold(a, env, which), _unfold(b, env, which))
        case Implies(a, b):
            return Implies(_unfold(a, env, which), _unfold(b, env, which))
        case Iff(a, b):
            return Iff(_unfold(a, env, which), _unfold(b, env, which))
        case ForAll(v, s, body):
            return ForAll(v, s, _unfold(body, env, which))
        case Exists(v, s, body):
            return Exists(v, s, _unfold(body, env, which))
    raise KernelError(f"not a formula: {f!r}")


def convertible(f: Formula, g: Formula, env: Environment) -> bool:
    """True iff f and g agree after unfolding all definitions and sugar."""
    return alpha_equal(unfold(f, env, "all"), unfold(g, env, "all"))


# ---------------------------------------------------------------------------
# Sort checking

SET_SORT = Sort("Set")


def term_sort(t: Term, var_sorts: dict[str, Sort], env: Environment) -> Sort:
    match t:
        case Var(name):
            if name not in var_sorts:
                raise SortMismatch(f"unknown variable {name}")
            return var_sorts[name]
        case Rat(v):
            if v.denominator == 1:
                return NAT if v >= 0 else INT
            return REAL
        case Neg(a):
            s = term_sort(a, var_sorts, env)
            if not is_numeric(s):
                raise SortMismatch(f"cannot negate a term of sort {s}")
            return numeric_join(s, INT)
        case Add(a, b) | Mul(a, b):
            return numeric_join(term_sort(a, var_sorts, env), term_sort(b, var_sorts, env))
        case Sub(a, b):
            return numeric_join(term_sort(a, var_sorts, env),
                                numeric_join(term_sort(b, var_sorts, env), INT))
        case Div(a, b):
            if not (isinstance(b, Rat) and b.value != 0):
                raise SortMismatch("division is only allowed by a nonzero literal")
            term_sort(a, var_sorts, env)
            return REAL
        case App(fn, args):
            arity = env.functions.get(fn)
            if arity is not None and arity != len(args):
                raise SortMismatch(f"function {fn} expects {arity} arguments, got {len(args)}")
            for a in args:
                term_sort(a, var_sorts, env)
            return REAL
        case Interval(lo, _, hi, _):
            for e in (lo, hi):
                if not is_numeric(term_sort(e, var_sorts, env)):
                    raise SortMismatch("interval endpoints must be numeric")
            return SET_SORT
    raise KernelError(f"not a term: {t!r}")


def _check_declared(s: Sort, env: Environment):
    if s in (REAL, INT, NAT, PROP, SET_SORT):
        return
    if s.name not in env.sorts:
        raise SortMismatch(f"sort {s} has not been declared")


def check_formula(f: Formula, var_sorts: dict[str, Sort], env: Environment) -> None:
    """Raise SortMismatch if f is not well-sorted under var_sorts and env."""
    match f:
        case Atom(_, a, b):
            numeric_join(term_sort(a, var_sorts, env), term_sort(b, var_sorts, env))
        case InSet(e, s):
            if not is_numeric(term_sort(e, var_sorts, env)):
                raise SortMismatch("set membership needs a numeric element")
            if term_sort(s, var_sorts, env) != SET_SORT:
                raise SortMismatch("membership right-hand side must be a set")
        case Pred(name, args):
            d = env.definitions.get(name)
            if d is not None:
                if len(args) != len(d.params):
                    raise SortMismatch(
                        f"{name} expects {len(d.params)} arguments, got {len(args)}")
                for (_, ps), a in zip(d.params, args):
                    s = term_sort(a, var_sorts, env)
                    if not (coercible(s, ps) or ps == SET_SORT and s == SET_SORT):
                        raise SortMismatch(
                            f"argument of {name} has sort {s}, expected {ps}")
            else:
                for a in args:
                    term_sort(a, var_sorts, env)
        case Not(a):
            check_formula(a, var_sorts, env)
        case And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b):
            check_formula(a, var_sorts, env)
            check_formula(b, var_sorts, env)
        case ForAll(v, s, body) | Exists(v, s, body):
            _check_declared(s, env)
            inner = dict(var_sorts)
            inner[v] = s
            check_formula(body, inner, env)
        case _:
            raise KernelError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Rendering

_TERM_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3}


def term_str(t: Term, prec: int = 0) -> str:
    match t:
        case Var(name):
            return name
        case Rat(v):
            if v.denominator == 1:
                return str(v.numerator)
            return f"{v.numerator}/{v.denominator}"
        case Neg(a):
            s = f"-{term_str(a, 3)}"
            return f"({s})" if prec > 2 else s
        case Add(a, b):
            s = f"{term_str(a, 1)} + {term_str(b, 2)}"
            return f"({s})" if prec > 1 else s
        case Sub(a, b):
            s = f"{term_str(a, 1)} - {term_str(b, 2)}"
            return f"({s})" if prec > 1 else s
        case Mul(a, b):
            s = f"{term_str(a, 2)}·{term_str(b, 3)}"
            return f"({s})" if prec > 2 else s
        case Div(a, b):
            s = f"{term_str(a, 2)}/{term_str(b, 3)}"
            return f"({s})" if prec > 2 else s
        case App(fn, args):
            return f"{fn}({', '.join(term_str(a) for a in args)})"
        case Interval(lo, lc, hi, hc):
            left = "[" if lc else "("
            right = "]" if hc else ")"
            return f"{left}{term_str(lo)},{term_str(hi)}{right}"
    raise KernelError(f"not a term: {t!r}")


# precedence: ⇔ 1 < ⇒ 2 < ∨ 3 < ∧ 4 < ¬ 5 < atoms
def formula_str(f: Formula, prec: int = 0) -> str:
    match f:
        case Atom(rel, a, b):
            return f"{term_str(a)} {rel} {term_str(b)}"
        case InSet(e, s):
            return f"{term_str(e)} ∈ {term_str(s)}"
        case Pred(name, args):
            if not args:
                return name
            return f"{name}({', '.join(term_str(a) for a in args)})"
        case Not(a):
            s = f"¬{formula_str(a, 5)}"
            return f"({s})" if prec > 5 else s
        case And(a, b):
            # the parser folds ∧/∨ left-associatively
            s = f"{formula_str(a, 4)} ∧ {formula_str(b, 5)}"
            return f"({s})" if prec > 4 else s
        case Or(a, b):
            s = f"{formula_str(a, 3)} ∨ {formula_str(b, 4)}"
            return f"({s})" if prec > 3 else s
        case Implies(a, b):
            s = f"{formula_str(a, 3)} ⇒ {formula_str(b, 2)}"
            return f"({s})" if prec > 2 else s
        case Iff(a, b):
            s = f"{formula_str(a, 2)} ⇔ {formula_str(b, 2)}"
            return f"({s})" if prec > 1 else s
        case ForAll(v, srt, body):
            s = f"∀ {v} : {srt}, {formula_str(body)}"
            return f"({s})" if prec > 0 else s
        case Exists(v, srt, body):
            s = f"∃ {v} : {srt}, {formula_str(body)}"
            return f"({s})" if prec > 0 else s
    raise KernelError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Goals, wrappers and proof states


@dataclass(frozen=True, slots=True)
class Hypothesis:
    label: str
    statement: Formula
    origin: str = "assumed"  # assumed | asserted | case | chosen


CASE_TAG = "case"
EXPECTED_TAG = "expected"
BASE_CASE_TAG = "base_case"
INDUCTION_STEP_TAG = "induction_step"


@dataclass(frozen=True, slots=True)
class Wrapper:
    kind: str
    expected: Formula


def wrapper_unwrap_line(w: Wrapper) -> str:
    body = formula_str(w.expected)
    match w.kind:
        case "case":
            return f"Case ({body})."
        case "expected":
            return f"We need to show that ({body})."
        case "base_case":
            return f"We first show the base case ({body})."
        case "induction_step":
            return f"We now show the induction step ({body})."
    raise KernelError(f"unknown wrapper kind {w.kind!r}")


def wrapper_display(w: Wrapper) -> str:
    return "Add the following line to the proof:\n  " + wrapper_unwrap_line(w)


@dataclass(frozen=True, slots=True)
class Goal:
    variables: tuple[tuple[str, Sort], ...] = ()
    hypotheses: tuple[Hypothesis, ...] = ()
    target: Formula = Pred("⊤")
    wrapper: Optional[Wrapper] = None

    def var_sorts(self) -> dict[str, Sort]:
        return dict(self.variables)

    def names_in_scope(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.variables) | \
            frozenset(h.label for h in self.hypotheses)

    def fresh_hyp_label(self) -> str:
        used = {h.label for h in self.hypotheses}
        n = 1
        while f"_H{n}" in used:
            n += 1
        return f"_H{n}"

    def with_hypothesis(self, statement: Formula, origin: str,
                        label: Optional[str] = None) -> "Goal":
        label = label or self.fresh_hyp_label()
        if label in self.names_in_scope():
            raise KernelError(f"label {label} is already in use")
        return replace(self, hypotheses=self.hypotheses + (Hypothesis(label, statement, origin),))

    def with_variable(self, name: str, sort: Sort) -> "Goal":
        if name in self.names_in_scope():
            raise KernelError(f"name {name} is already in use")
        return replace(self, variables=self.variables + ((name, sort),))

    def with_target(self, target: Formula) -> "Goal":
        return replace(self, target=target)


def goal_display(goal: Goal) -> str:
    """What the user sees: the unwrap instruction, or the target."""
    if goal.wrapper is not None:
        return wrapper_display(goal.wrapper)
    return formula_str(goal.target)


@dataclass(frozen=True, slots=True)
class BulletFrame:
    marker: str
    remaining: int
    base: int  # number of goals below this split


MAX_BULLET_DEPTH = 8


def bullet_marker(depth: int) -> str:
    if not 1 <= depth <= MAX_BULLET_DEPTH:
        raise KernelError(f"bullet depth {depth} out of range")
    char = "-+*"[(depth - 1) % 3]
    return char * (1 + (depth - 1) // 3)


def bullet_depth(marker: str) -> int:
    char = marker[0]
    if char not in "-+*" or marker != char * len(marker):
        raise KernelError(f"not a bullet marker: {marker!r}")
    return (len(marker) - 1) * 3 + "-+*".index(char) + 1


@dataclass(frozen=True, slots=True)
class ProofState:
    goals: tuple[Goal, ...]
    bullet_stack: tuple[BulletFrame, ...] = ()
    needs_bullet: bool = False

    @property
    def status(self) -> str:
        return "complete" if not self.goals else "open"

    @property
    def focused(self) -> Goal:
        if not self.goals:
            raise KernelError("no goals left")
        return self.goals[0]


def initial_state(target: Formula) -> ProofState:
    return ProofState(goals=(Goal(target=target),))
