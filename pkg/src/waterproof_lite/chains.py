"""Chains of (in)equalities: `& e0 R1 e1 R2 ... Rn en`.

A chain is split into its individual links for proving (so the user knows
exactly which step is to blame) while the goal is matched against the
composed end-to-end statement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import (
    And, Atom, Environment, Formula, SortMismatch, Term, numeric_join,
    term_sort, term_str,
)

ASCENDING = frozenset({"=", "<", "≤"})
DESCENDING = frozenset({"=", ">", "≥"})


@dataclass(frozen=True, slots=True)
class Chain:
    base: Term
    links: tuple[tuple[str, Term], ...]


class DirectionError(Exception):
    def __init__(self, first: str, second: str):
        super().__init__(
            f"a chain may not mix `{first}` with `{second}`")
        self.relations = (first, second)


class ChainSortError(Exception):
    pass


def validate(chain: Chain, env: Environment, var_sorts: dict) -> None:
    """Check the direction-class and shared-sort invariants."""
    if not chain.links:
        raise DirectionError("&", "&")
    rels = [rel for rel, _ in chain.links]
    up = [r for r in rels if r in ("<", "≤")]
    down = [r for r in rels if r in (">", "≥")]
    if up and down:
        raise DirectionError(up[0], down[0])
    try:
        sort = term_sort(chain.base, var_sorts, env)
        for _, t in chain.links:
            sort = numeric_join(sort, term_sort(t, var_sorts, env))
    except SortMismatch as e:
        raise ChainSortError(str(e)) from e


def atoms(chain: Chain) -> list[Atom]:
    """The individual links as relation atoms, in order."""
    out = []
    prev = chain.base
    for rel, t in chain.links:
        out.append(Atom(rel, prev, t))
        prev = t
    return out


def total_statement(chain: Chain) -> Formula:
    """Right-nested conjunction of all links."""
    parts = atoms(chain)
    f: Formula = parts[-1]
    for a in reversed(parts[:-1]):
        f = And(a, f)
    return f


def global_statement(chain: Chain) -> Atom:
    """End-to-end relation between the base and the final term."""
    rels = {rel for rel, _ in chain.links}
    last = chain.links[-1][1]
    if rels == {"="}:
        rel = "="
    elif rels <= ASCENDING:
        rel = "<" if "<" in rels else "≤"
    elif rels <= DESCENDING:
        rel = ">" if ">" in rels else "≥"
    else:
        raise DirectionError(min(rels), max(rels))
    return Atom(rel, chain.base, last)


def chain_str(chain: Chain) -> str:
    parts = ["&", term_str(chain.base)]
    for rel, t in chain.links:
        parts.append(rel)
        parts.append(term_str(t))
    return " ".join(parts)
