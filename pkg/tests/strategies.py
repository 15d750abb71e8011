"""Hypothesis strategies for terms, formulas, sentences and documents.

The generators stay inside the printable fragment: everything they build
must survive print -> parse with structural equality, so e.g. rational
literals are restricted to nonnegative integers (a printed `1/2` would
reparse as a division node, `-3` as a negation node).
"""

from hypothesis import strategies as st

from waterproof_lite.chains import Chain
from waterproof_lite.doc import Code, Hint, InputArea, Text, WaterDoc
from waterproof_lite.kernel import (
    INT, NAT, REAL, Add, And, App, Atom, Div, Exists, ForAll, Iff, Implies,
    InSet, Interval, Mul, Neg, Not, Or, Pred, Sub, Var, rat,
)

var_names = st.sampled_from(["x", "y", "z", "a", "b", "eps", "u", "v"])
pred_names = st.sampled_from(["P", "Q", "is_nice"])
fn_names = st.sampled_from(["f", "g"])
sorts = st.sampled_from([REAL, INT, NAT])
labels = st.sampled_from(["H1", "H2", "myfact"])

_leaves = st.one_of(
    var_names.map(Var),
    st.integers(0, 9).map(rat),
)


def _combine_terms(children):
    binary = st.one_of(
        st.tuples(children, children).map(lambda p: Add(*p)),
        st.tuples(children, children).map(lambda p: Sub(*p)),
        st.tuples(children, children).map(lambda p: Mul(*p)),
    )
    return st.one_of(
        binary,
        children.map(Neg),
        st.tuples(children, st.integers(1, 9)).map(
            lambda p: Div(p[0], rat(p[1]))),
        st.tuples(fn_names, st.lists(children, min_size=1, max_size=2)).map(
            lambda p: App(p[0], tuple(p[1]))),
    )


terms = st.recursive(_leaves, _combine_terms, max_leaves=5)

intervals = st.tuples(terms, st.booleans(), terms, st.booleans()).map(
    lambda p: Interval(*p))

_atoms = st.one_of(
    st.tuples(st.sampled_from(["=", "<", "≤", ">", "≥"]), terms, terms).map(
        lambda p: Atom(*p)),
    st.tuples(terms, st.one_of(intervals, var_names.map(Var))).map(
        lambda p: InSet(*p)),
    st.tuples(pred_names, st.lists(terms, max_size=2)).map(
        lambda p: Pred(p[0], tuple(p[1]))),
)


def _combine_formulas(children):
    pairs = st.tuples(children, children)
    return st.one_of(
        children.map(Not),
        pairs.map(lambda p: And(*p)),
        pairs.map(lambda p: Or(*p)),
        pairs.map(lambda p: Implies(*p)),
        pairs.map(lambda p: Iff(*p)),
        st.tuples(var_names, sorts, children).map(lambda p: ForAll(*p)),
        st.tuples(var_names, sorts, children).map(lambda p: Exists(*p)),
    )


formulas = st.recursive(_atoms, _combine_formulas, max_leaves=6)

_REL_CLASSES = (("=",), ("=", "<", "≤"), ("=", ">", "≥"))

chains = st.tuples(
    terms,
    st.sampled_from(_REL_CLASSES).flatmap(
        lambda rels: st.lists(
            st.tuples(st.sampled_from(rels), terms), min_size=1, max_size=3)),
).map(lambda p: Chain(p[0], tuple(p[1])))


# ---------------------------------------------------------------------------
# Sentences

from waterproof_lite.kernel import bullet_marker  # noqa: E402
from waterproof_lite.lang import Sentence  # noqa: E402

_take_groups = st.lists(
    st.tuples(st.lists(var_names, min_size=1, max_size=2, unique=True), sorts),
    min_size=1, max_size=2,
).map(lambda gs: tuple((tuple(names), sort) for names, sort in gs))

_opt_label = st.one_of(st.none(), labels)
_opt_by = st.one_of(st.none(), st.sampled_from(["IVT", "sq_nonneg", "H1"]))

_payloads = {
    "Take": st.tuples(_take_groups),
    "AssumeThat": st.tuples(formulas, _opt_label),
    "Choose": st.tuples(var_names, terms),
    "ShowBoth": st.tuples(formulas, formulas),
    "EitherOr": st.tuples(formulas, formulas),
    "Case": st.tuples(formulas),
    "NeedToShow": st.tuples(formulas),
    "BaseCase": st.tuples(formulas),
    "InductionStep": st.tuples(formulas),
    "ConcludeThat": st.tuples(st.one_of(formulas, chains), _opt_by),
    "ItHoldsThat": st.tuples(formulas, _opt_label, _opt_by),
    "SufficesToShow": st.tuples(formulas, _opt_by),
    "UseInduction": st.tuples(var_names),
    "ExpandDefinition": st.tuples(st.sampled_from(["sup", "limit"]), formulas),
    "Help": st.just(()),
    "ProofBegin": st.just(()),
    "Qed": st.just(()),
    "LemmaHeader": st.tuples(st.sampled_from(["lem", "near_four"]), formulas),
}

_bullets = st.one_of(
    st.none(), st.integers(1, 8).map(bullet_marker))


@st.composite
def sentences(draw):
    kind = draw(st.sampled_from(sorted(_payloads)))
    payload = draw(_payloads[kind])
    bullet = draw(_bullets)
    return Sentence(kind, payload, bullet)


# ---------------------------------------------------------------------------
# Documents

_text_lines = st.lists(
    st.sampled_from(["Prove the following.", "A short *remark*.", "",
                     "Intermezzo: sums and bounds."]),
    min_size=1, max_size=3)
_texts = _text_lines.map(lambda ls: Text("\n".join(ls) + "\n"))

_code_bodies = st.sampled_from(
    ["", "Take x : ℝ.\n", "We conclude that (0 = 0).\nQed.\n"])
_codes = _code_bodies.map(Code)


def _no_adjacent_texts(blocks):
    return not any(isinstance(a, Text) and isinstance(b, Text)
                   for a, b in zip(blocks, blocks[1:]))


_inner_blocks = st.lists(st.one_of(_texts, _codes), max_size=3).filter(
    _no_adjacent_texts).map(tuple)

_areas = _inner_blocks.map(InputArea)
_hints = st.tuples(st.sampled_from(["Stuck?", "Try induction"]),
                   _inner_blocks).map(lambda p: Hint(*p))

_top_blocks = st.lists(st.one_of(_texts, _codes, _areas, _hints),
                       max_size=5).filter(_no_adjacent_texts).map(tuple)

_preambles = st.lists(st.sampled_from(["#library a.wpl", "#title Sheet 1"]),
                      max_size=2, unique=True).map(tuple)

documents = st.builds(WaterDoc, st.just("1"), _preambles, _top_blocks)
