"""Tokenizer and parser for proof-sentence scripts.

The sentence grammar is deliberately strict: only the fixed formulations
listed in the grammar table (data/grammar_en.json) are accepted.  The
table is a versioned data file so that further languages can be added
without touching the parser logic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Union

from . import kernel
from .chains import Chain
from .kernel import (
    Add, App, Atom, Div, Exists, ForAll, Formula, InSet, Interval, Mul, Neg,
    Not, Or, And, Iff, Implies, Pred, Rat, Sort, Sub, Term, Var,
)


# ---------------------------------------------------------------------------
# Source spans and tokens


@dataclass(frozen=True, slots=True)
class SourceSpan:
    start_line: int
    start_col: int
    end_line: int
    end_col: int  # exclusive

    def to_json(self) -> dict:
        return {"startLine": self.start_line, "startCol": self.start_col,
                "endLine": self.end_line, "endCol": self.end_col}


def merge_spans(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    return SourceSpan(a.start_line, a.start_col, b.end_line, b.end_col)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "word" | "int" | "sym"
    value: str
    span: SourceSpan


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[SourceSpan] = None,
                 expected: tuple[str, ...] = (), hint: Optional[str] = None):
        full = message if hint is None else f"{message} {hint}"
        super().__init__(full)
        self.message = full
        self.span = span
        self.expected = expected
        self.hint = hint


# ---------------------------------------------------------------------------
# Tokenizer

_MULTI_SYMS = {":=": ":=", "/\\": "∧", "\\/": "∨", "=>": "⇒", "<=": "≤", ">=": "≥"}
_SINGLE_SYMS = set("()[]{},:.&+-*·/=<>≤≥∈∀∃∧∨⇒⇔¬")
_WORD_SYMS = {"forall": "∀", "exists": "∃", "in": "∈"}
_IDENT_EXTRA = "_′″‴₀₁₂₃₄₅₆₇₈₉"


def _is_word_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_word_char(c: str) -> bool:
    return c.isalpha() or c.isdigit() or c in _IDENT_EXTRA


def tokenize(text: str) -> list[Token]:
    """Lex a script into words, integers and (normalized) symbols.

    ASCII aliases (forall, exists, in, /\\, \\/, =>, <=, >=) produce the
    same token kinds and values as the corresponding Unicode symbols.
    """
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def advance(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if text.startswith("(*", i):
            depth = 1
            start = (line, col)
            advance(2)
            while i < n and depth:
                if text.startswith("(*", i):
                    depth += 1
                    advance(2)
                elif text.startswith("*)", i):
                    depth -= 1
                    advance(2)
                else:
                    advance(1)
            if depth:
                raise ParseError("unterminated comment",
                                 SourceSpan(start[0], start[1], line, col))
            continue
        start_line, start_col = line, col
        two = text[i:i + 2]
        if two in _MULTI_SYMS:
            advance(2)
            tokens.append(Token("sym", _MULTI_SYMS[two],
                                SourceSpan(start_line, start_col, line, col)))
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            value = text[i:j]
            advance(j - i)
            tokens.append(Token("int", value,
                                SourceSpan(start_line, start_col, line, col)))
            continue
        if _is_word_start(c):
            j = i
            while j < n and _is_word_char(text[j]):
                j += 1
            value = text[i:j]
            advance(j - i)
            span = SourceSpan(start_line, start_col, line, col)
            if value in _WORD_SYMS:
                tokens.append(Token("sym", _WORD_SYMS[value], span))
            else:
                tokens.append(Token("word", value, span))
            continue
        if c in _SINGLE_SYMS:
            advance(1)
            tokens.append(Token("sym", c, SourceSpan(start_line, start_col, line, col)))
            continue
        raise ParseError(f"unknown character {c!r}",
                         SourceSpan(start_line, start_col, line, col + 1))
    return tokens


# ---------------------------------------------------------------------------
# Grammar table


def _load_grammar() -> dict:
    data = resources.files("waterproof_lite").joinpath("data/grammar_en.json")
    return json.loads(data.read_text(encoding="utf-8"))


_GRAMMAR = _load_grammar()
GRAMMAR_VERSION = _GRAMMAR["version"]
HEADS: list[tuple[str, tuple[str, ...]]] = [
    (entry["kind"], tuple(entry["head"])) for entry in _GRAMMAR["heads"]
]
SNIPPETS: list[tuple[str, str]] = [
    (entry["kind"], entry["template"]) for entry in _GRAMMAR["heads"]
]


# ---------------------------------------------------------------------------
# Sentences


@dataclass(frozen=True, slots=True)
class Sentence:
    kind: str
    payload: tuple
    bullet: Optional[str] = None
    span: Optional[SourceSpan] = None


def _payload_eq(a, b) -> bool:
    if type(a) is not type(b):
        if not (isinstance(a, tuple) and isinstance(b, tuple)):
            return False
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_payload_eq(x, y) for x, y in zip(a, b))
    if isinstance(a, Chain):
        return isinstance(b, Chain) and _payload_eq(a.base, b.base) and \
            _payload_eq(a.links, b.links)
    if isinstance(a, kernel.BINARY + kernel.QUANT + (Atom, InSet, Pred, Not)):
        return kernel.alpha_equal(a, b)
    if isinstance(a, (Var, Rat, Neg, Add, Sub, Mul, Div, App, Interval)):
        return kernel._alpha_term(a, b, {}, {})
    return a == b


def sentences_equal(a: Sentence, b: Sentence) -> bool:
    """Kind equality plus payload alpha-equality (ignores spans/bullets)."""
    return a.kind == b.kind and _payload_eq(a.payload, b.payload)


# ---------------------------------------------------------------------------
# Formula / term parser

_REL_SYMS = ("=", "<", ">", "≤", "≥")


class _P:
    def __init__(self, tokens: list[Token], notations=()):
        self.tokens = tokens
        self.pos = 0
        self.notations = tuple(notations)

    # -- basics

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at_sym(self, *values: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "sym" and t.value in values

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of sentence", self.end_span())
        self.pos += 1
        return t

    def end_span(self) -> Optional[SourceSpan]:
        if self.tokens:
            s = self.tokens[-1].span
            return SourceSpan(s.end_line, s.end_col, s.end_line, s.end_col)
        return None

    def expect_sym(self, value: str) -> Token:
        t = self.peek()
        if t is None or t.kind != "sym" or t.value != value:
            raise ParseError(f"expected `{value}`",
                             t.span if t else self.end_span(), expected=(value,))
        return self.next()

    def expect_word(self, value: Optional[str] = None) -> str:
        t = self.peek()
        if t is None or t.kind != "word" or (value is not None and t.value != value):
            what = f"`{value}`" if value else "an identifier"
            raise ParseError(f"expected {what}",
                             t.span if t else self.end_span(),
                             expected=(value,) if value else ("identifier",))
        return self.next().value

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    # -- terms

    def parse_term(self) -> Term:
        return self._add()

    def _add(self) -> Term:
        t = self._mul()
        while self.at_sym("+", "-"):
            op = self.next().value
            rhs = self._mul()
            t = Add(t, rhs) if op == "+" else Sub(t, rhs)
        return t

    def _mul(self) -> Term:
        t = self._unary_term()
        while self.at_sym("*", "·", "/"):
            op = self.next()
            rhs = self._unary_term()
            if op.value == "/":
                if not (isinstance(rhs, Rat) and rhs.value != 0):
                    raise ParseError(
                        "division is only allowed by a nonzero literal", op.span)
                t = Div(t, rhs)
            else:
                t = Mul(t, rhs)
        return t

    def _unary_term(self) -> Term:
        if self.at_sym("-"):
            self.next()
            return Neg(self._unary_term())
        return self._primary()

    def _primary(self) -> Term:
        t = self.peek()
        if t is None:
            raise ParseError("expected a term", self.end_span())
        if t.kind == "int":
            self.next()
            return Rat(Fraction(int(t.value)))
        if t.kind == "word":
            self.next()
            if self.at_sym("("):
                self.next()
                args = [self.parse_term()]
                while self.at_sym(","):
                    self.next()
                    args.append(self.parse_term())
                self.expect_sym(")")
                return App(t.value, tuple(args))
            return Var(t.value)
        if t.kind == "sym" and t.value in "([":
            lo_closed = t.value == "["
            self.next()
            first = self.parse_term()
            if self.at_sym(","):
                self.next()
                hi = self.parse_term()
                closer = self.next()
                if closer.kind != "sym" or closer.value not in ")]":
                    raise ParseError("expected `)` or `]` to close the interval",
                                     closer.span)
                return Interval(first, lo_closed, hi, closer.value == "]")
            if lo_closed:
                raise ParseError("expected `,` inside interval",
                                 self.peek().span if self.peek() else self.end_span())
            self.expect_sym(")")
            return first
        raise ParseError("expected a term", t.span)

    # -- formulas

    def parse_formula(self) -> Formula:
        return self._iff()

    def _iff(self) -> Formula:
        f = self._implies()
        while self.at_sym("⇔"):
            self.next()
            f = Iff(f, self._implies())
        return f

    def _implies(self) -> Formula:
        f = self._or()
        if self.at_sym("⇒"):
            self.next()
            return Implies(f, self._implies())
        return f

    def _or(self) -> Formula:
        f = self._and()
        while self.at_sym("∨"):
            self.next()
            f = Or(f, self._and())
        return f

    def _and(self) -> Formula:
        f = self._funit()
        while self.at_sym("∧"):
            self.next()
            f = And(f, self._funit())
        return f

    def _quantifier_head(self) -> Optional[type]:
        t = self.peek()
        if t is None:
            return None
        if t.kind == "sym" and t.value == "∀":
            self.next()
            return ForAll
        if t.kind == "sym" and t.value == "∃":
            self.next()
            return Exists
        if t.kind == "word" and t.value == "for":
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == "word" and nxt.value == "all":
                self.next()
                self.next()
                return ForAll
        if t.kind == "word" and t.value == "there":
            # "exists" itself lexes as the symbol ∃
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == "sym" and nxt.value == "∃":
                self.next()
                self.next()
                return Exists
        return None

    def parse_sort(self) -> Sort:
        name = self.expect_word()
        return Sort(name)

    def _funit(self) -> Formula:
        if self.at_sym("¬"):
            self.next()
            return Not(self._funit())
        cls = self._quantifier_head()
        if cls is not None:
            name = self.expect_word()
            self.expect_sym(":")
            sort = self.parse_sort()
            self.expect_sym(",")
            body = self._iff()
            return cls(name, sort, body)
        return self._atom()

    def _atom(self) -> Formula:
        # A leading `(` may open a parenthesized formula, a parenthesized
        # term, or an open interval; try the term route first and fall
        # back to the formula route.
        if self.at_sym("("):
            save = self.pos
            try:
                return self._comparison()
            except ParseError:
                self.pos = save
            self.next()
            f = self._iff()
            self.expect_sym(")")
            return f
        return self._comparison()

    def _match_notation(self) -> Optional[str]:
        for notation in self.notations:
            ok = True
            for k, word in enumerate(notation.words):
                t = self.peek(k)
                if t is None or t.kind != "word" or t.value != word:
                    ok = False
                    break
            if ok:
                for _ in notation.words:
                    self.next()
                return notation.name
        return None

    def _comparison(self) -> Formula:
        lhs = self.parse_term()
        t = self.peek()
        if t is not None and t.kind == "sym" and t.value in _REL_SYMS:
            rel = self.next().value
            rel = {"<=": "≤", ">=": "≥"}.get(rel, rel)
            rhs = self.parse_term()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "sym" and nxt.value in _REL_SYMS:
                raise ParseError(
                    "chained comparisons are not allowed in a plain statement;"
                    " use the chain syntax `(& a < b < c)` instead", nxt.span)
            return Atom(rel, lhs, rhs)
        if t is not None and t.kind == "sym" and t.value in ("∈", ":"):
            self.next()
            the_set = self._primary()
            return InSet(lhs, the_set)
        name = self._match_notation()
        if name is not None:
            second = self.parse_term()
            return Pred(name, (second, lhs))
        if isinstance(lhs, Var):
            return Pred(lhs.name, ())
        if isinstance(lhs, App):
            return Pred(lhs.fn, lhs.args)
        raise ParseError("expected a relation after this term",
                         t.span if t else self.end_span())

    # -- chains

    def parse_chain(self) -> Chain:
        self.expect_sym("&")
        base = self.parse_term()
        links: list[tuple[str, Term]] = []
        while True:
            t = self.peek()
            if t is not None and t.kind == "sym" and t.value in _REL_SYMS:
                rel = self.next().value
                links.append((rel, self.parse_term()))
            else:
                break
        if not links:
            raise ParseError("a chain needs at least one relation",
                             t.span if t else self.end_span())
        return Chain(base, tuple(links))


def parse_formula(tokens_or_text, notations=()) -> Formula:
    """Parse a standalone formula from text or a token list."""
    tokens = tokenize(tokens_or_text) if isinstance(tokens_or_text, str) \
        else list(tokens_or_text)
    p = _P(tokens, notations)
    f = p.parse_formula()
    if not p.done():
        raise ParseError("unexpected trailing input", p.peek().span)
    return f


def parse_term(text: str, notations=()) -> Term:
    p = _P(tokenize(text), notations)
    t = p.parse_term()
    if not p.done():
        raise ParseError("unexpected trailing input", p.peek().span)
    return t


# ---------------------------------------------------------------------------
# Script parsing


def _split_sentences(tokens: list[Token]) -> list[list[Token]]:
    """Split on `.` tokens at bracket depth 0; the period ends each group."""
    groups: list[list[Token]] = []
    cur: list[Token] = []
    depth = 0
    for t in tokens:
        if t.kind == "sym" and t.value in "([":
            depth += 1
        elif t.kind == "sym" and t.value in ")]":
            depth = max(0, depth - 1)
        if t.kind == "sym" and t.value == "." and depth == 0:
            cur.append(t)
            groups.append(cur)
            cur = []
        else:
            cur.append(t)
    if cur:
        span = cur[-1].span
        raise ParseError("sentence is missing its final `.`", span)
    return groups


def _take_bullet(group: list[Token]) -> tuple[Optional[str], list[Token]]:
    if not group or group[0].kind != "sym" or group[0].value not in "-+*":
        return None, group
    char = group[0].value
    k = 0
    while k < len(group) and group[k].kind == "sym" and group[k].value == char:
        # require adjacency so `- -` is not a bullet marker `--`
        if k > 0:
            prev, cur = group[k - 1].span, group[k].span
            if (prev.end_line, prev.end_col) != (cur.start_line, cur.start_col):
                break
        k += 1
    rest = group[k:]
    if not rest or rest[0].kind != "word":
        return None, group
    return char * k, rest


def _match_head(group: list[Token]) -> Optional[str]:
    best = None
    best_len = -1
    for kind, head in HEADS:
        if len(head) > len(group):
            continue
        if all(group[i].kind == "word" and group[i].value == head[i]
               for i in range(len(head))):
            if len(head) > best_len:
                best, best_len = kind, len(head)
    return best


def _head_hint(group: list[Token]) -> Optional[str]:
    if not group or group[0].kind != "word":
        return None
    first = group[0].value
    for kind, head in HEADS:
        if head[0] == first and len(head) > 1:
            return f"Did you mean `{' '.join(head)} (...)`?"
    return None


def _parse_group(group: list[Token], notations=()) -> Sentence:
    full_span = merge_spans(group[0].span, group[-1].span)
    bullet, body = _take_bullet(group)
    assert body and body[-1].kind == "sym" and body[-1].value == "."
    body = body[:-1]
    if not body:
        raise ParseError("empty sentence", full_span)
    kind = _match_head(body)
    if kind is None:
        hint = _head_hint(body)
        raise ParseError("unknown proof sentence", full_span, hint=hint)
    head_len = len(next(h for k, h in HEADS if k == kind))
    p = _P(body[head_len:], notations)
    payload, kind = _parse_payload(kind, p)
    if not p.done():
        raise ParseError("unexpected trailing tokens in sentence", p.peek().span)
    return Sentence(kind, payload, bullet, full_span)


def _parse_paren_formula(p: _P) -> Formula:
    p.expect_sym("(")
    f = p.parse_formula()
    p.expect_sym(")")
    return f


def _parse_opt_label(p: _P) -> Optional[str]:
    if p.at_sym("("):
        t = p.peek(1)
        t2 = p.peek(2)
        if t is not None and t.kind == "word" and t2 is not None and \
                t2.kind == "sym" and t2.value == ")":
            p.next()
            label = p.next().value
            p.next()
            return label
    return None


def _parse_payload(kind: str, p: _P) -> tuple[tuple, str]:
    if kind == "Take":
        groups = []
        while True:
            names = [p.expect_word()]
            while p.at_sym(","):
                p.next()
                names.append(p.expect_word())
            p.expect_sym(":")
            sort = p.parse_sort()
            groups.append((tuple(names), sort))
            t = p.peek()
            if t is not None and t.kind == "word" and t.value == "and":
                p.next()
                continue
            break
        return (tuple(groups),), kind
    if kind == "AssumeThat":
        f = _parse_paren_formula(p)
        label = _parse_opt_label(p)
        return (f, label), kind
    if kind == "Choose":
        name = p.expect_word()
        p.expect_sym(":=")
        term = p.parse_term()
        return (name, term), kind
    if kind == "ShowBoth":
        f = _parse_paren_formula(p)
        p.expect_word("and")
        g = _parse_paren_formula(p)
        return (f, g), kind
    if kind == "EitherOr":
        f = _parse_paren_formula(p)
        p.expect_word("or")
        g = _parse_paren_formula(p)
        return (f, g), kind
    if kind in ("Case", "NeedToShow", "BaseCase", "InductionStep"):
        return (_parse_paren_formula(p),), kind
    if kind == "ConcludeThat":
        p.expect_sym("(")
        body = p.parse_chain() if p.at_sym("&") else p.parse_formula()
        p.expect_sym(")")
        return (body, None), kind
    if kind == "ItHoldsThat":
        f = _parse_paren_formula(p)
        label = _parse_opt_label(p)
        return (f, label, None), kind
    if kind == "SufficesToShow":
        return (_parse_paren_formula(p), None), kind
    if kind == "ByClause":
        ref = p.expect_word()
        t = p.peek()
        if t is not None and t.kind == "word" and t.value == "it":
            p.expect_word("it")
            verb = p.expect_word()
            if verb == "holds":
                p.expect_word("that")
                f = _parse_paren_formula(p)
                label = _parse_opt_label(p)
                return (f, label, ref), "ItHoldsThat"
            if verb == "suffices":
                p.expect_word("to")
                p.expect_word("show")
                p.expect_word("that")
                return (_parse_paren_formula(p), ref), "SufficesToShow"
            raise ParseError("expected `holds` or `suffices` after `By ... it`",
                             p.peek().span if p.peek() else p.end_span())
        p.expect_word("we")
        p.expect_word("conclude")
        p.expect_word("that")
        p.expect_sym("(")
        body = p.parse_chain() if p.at_sym("&") else p.parse_formula()
        p.expect_sym(")")
        return (body, ref), "ConcludeThat"
    if kind == "UseInduction":
        return (p.expect_word(),), kind
    if kind == "ExpandDefinition":
        word = p.expect_word()
        p.expect_sym("∈")
        f = _parse_paren_formula(p)
        return (word, f), kind
    if kind in ("Help", "ProofBegin", "Qed"):
        return (), kind
    if kind == "LemmaHeader":
        name = p.expect_word()
        p.expect_sym(":")
        f = p.parse_formula()
        return (name, f), kind
    raise ParseError(f"unhandled sentence kind {kind}")


def parse_script(text: str, notations=()) -> list[Sentence]:
    """Parse a proof script into sentences; raises ParseError on the first
    ill-formed sentence."""
    groups = _split_sentences(tokenize(text))
    return [_parse_group(g, notations) for g in groups]


@dataclass(frozen=True, slots=True)
class BadSentence:
    span: SourceSpan
    error: ParseError


def parse_script_lenient(text: str, notations=()) -> list[Union[Sentence, BadSentence]]:
    """Like parse_script, but yields a BadSentence marker per failing
    sentence instead of aborting the whole script."""
    out: list[Union[Sentence, BadSentence]] = []
    try:
        groups = _split_sentences(tokenize(text))
    except ParseError as e:
        span = e.span or SourceSpan(1, 1, 1, 1)
        return [BadSentence(span, e)]
    for g in groups:
        try:
            out.append(_parse_group(g, notations))
        except ParseError as e:
            span = e.span or merge_spans(g[0].span, g[-1].span)
            out.append(BadSentence(span, e))
    return out


# ---------------------------------------------------------------------------
# Printing

from .chains import chain_str  # noqa: E402  (cycle-free: chains imports kernel only)


def print_sentence(s: Sentence) -> str:
    """Canonical rendering; parse_script(print_sentence(s)) round-trips."""
    fs = kernel.formula_str
    ts = kernel.term_str
    match s.kind:
        case "Take":
            (groups,) = s.payload
            parts = [f"{', '.join(names)} : {sort}" for names, sort in groups]
            body = f"Take {' and '.join(parts)}."
        case "AssumeThat":
            f, label = s.payload
            suffix = f" ({label})" if label else ""
            body = f"Assume that ({fs(f)}){suffix}."
        case "Choose":
            name, term = s.payload
            body = f"Choose {name} := ({ts(term)})."
        case "ShowBoth":
            f, g = s.payload
            body = f"We show both ({fs(f)}) and ({fs(g)})."
        case "EitherOr":
            f, g = s.payload
            body = f"Either ({fs(f)}) or ({fs(g)})."
        case "Case":
            body = f"Case ({fs(s.payload[0])})."
        case "ConcludeThat":
            inner, by = s.payload
            text = chain_str(inner) if isinstance(inner, Chain) else fs(inner)
            body = f"We conclude that ({text})."
            if by:
                body = f"By {by} we conclude that ({text})."
        case "ItHoldsThat":
            f, label, by = s.payload
            suffix = f" ({label})" if label else ""
            body = f"It holds that ({fs(f)}){suffix}."
            if by:
                body = f"By {by} it holds that ({fs(f)}){suffix}."
        case "SufficesToShow":
            f, by = s.payload
            body = f"It suffices to show that ({fs(f)})."
            if by:
                body = f"By {by} it suffices to show that ({fs(f)})."
        case "NeedToShow":
            body = f"We need to show that ({fs(s.payload[0])})."
        case "UseInduction":
            body = f"We use induction on {s.payload[0]}."
        case "BaseCase":
            body = f"We first show the base case ({fs(s.payload[0])})."
        case "InductionStep":
            body = f"We now show the induction step ({fs(s.payload[0])})."
        case "ExpandDefinition":
            word, f = s.payload
            body = f"Expand the definition of {word} in ({fs(f)})."
        case "Help":
            body = "Help."
        case "ProofBegin":
            body = "Proof."
        case "Qed":
            body = "Qed."
        case "LemmaHeader":
            name, f = s.payload
            body = f"Lemma {name} : {fs(f)}."
        case _:
            raise ParseError(f"cannot print sentence kind {s.kind}")
    if s.bullet:
        return f"{s.bullet} {body}"
    return body
