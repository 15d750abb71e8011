"""Course-library files (.wpl).

A library file configures the checking Environment with directives:

    #sort <Name>
    #definition [opaque] <name>(<param> : <Sort>, ...) := <formula>
    #notation "<words>" := <name>
    #database <name>
    #lemma <label> : <formula>
    #collection main|weak|core += <database>

`#lemma` adds to the most recently declared database.  Formulas use the
same syntax as proof scripts, including the ASCII aliases.
"""

from __future__ import annotations

import re

from .kernel import (
    Definition, Environment, Notation, Sort, SortMismatch, check_formula,
    free_vars,
)
from .lang import ParseError, parse_formula, tokenize


class LibraryError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_DEF_HEAD = re.compile(
    r"^(?P<opaque>opaque\s+)?(?P<name>\w[\w′″‴₀₁₂₃₄₅₆₇₈₉]*)\s*"
    r"(\((?P<params>[^)]*)\))?\s*:=\s*(?P<body>.+)$", re.S)
_NOTATION = re.compile(r'^"(?P<words>[^"]+)"\s*:=\s*(?P<name>\S+)$')
_COLLECTION = re.compile(r"^(?P<coll>main|weak|core)\s*\+=\s*(?P<db>\S+)$")


def _parse_params(text: str, line: int) -> tuple[tuple[str, Sort], ...]:
    params = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise LibraryError(f"parameter {part!r} needs `name : Sort`", line)
        name, sort = part.split(":", 1)
        params.append((name.strip(), Sort(sort.strip())))
    return tuple(params)


def load_library(text: str) -> Environment:
    """Build an Environment from .wpl directive text."""
    sorts: set[str] = set()
    definitions: dict[str, Definition] = {}
    notations: list[Notation] = []
    databases: dict[str, dict] = {}
    collections: dict[str, tuple[str, ...]] = {"main": (), "weak": (), "core": ()}
    current_db: str | None = None

    def env_now() -> Environment:
        return Environment(frozenset(sorts), dict(definitions),
                           tuple(notations), {}, {k: dict(v) for k, v in databases.items()},
                           dict(collections))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not line.startswith("#"):
            raise LibraryError("expected a `#` directive", lineno)
        head, _, rest = line[1:].partition(" ")
        rest = rest.strip()
        try:
            if head == "sort":
                if not rest:
                    raise LibraryError("`#sort` needs a name", lineno)
                sorts.add(rest)
            elif head == "definition":
                m = _DEF_HEAD.match(rest)
                if m is None:
                    raise LibraryError("malformed `#definition`", lineno)
                name = m.group("name")
                if name in definitions:
                    raise LibraryError(f"definition {name} already exists", lineno)
                params = _parse_params(m.group("params") or "", lineno)
                env = env_now()
                body = parse_formula(m.group("body"), tuple(notations))
                check_formula(body, dict(params), env)
                definitions[name] = Definition(name, params, body,
                                               opaque=bool(m.group("opaque")))
            elif head == "notation":
                m = _NOTATION.match(rest)
                if m is None:
                    raise LibraryError("malformed `#notation`", lineno)
                words = tuple(m.group("words").split())
                notations.append(Notation(words, m.group("name")))
            elif head == "database":
                if not rest:
                    raise LibraryError("`#database` needs a name", lineno)
                if rest in databases:
                    raise LibraryError(f"database {rest} already exists", lineno)
                databases[rest] = {}
                current_db = rest
            elif head == "lemma":
                label, sep, formula_text = rest.partition(":")
                label = label.strip()
                if not sep or not label:
                    raise LibraryError("`#lemma` needs `label : formula`", lineno)
                if current_db is None:
                    raise LibraryError("`#lemma` before any `#database`", lineno)
                if any(label in db for db in databases.values()):
                    raise LibraryError(f"lemma {label} already exists", lineno)
                env = env_now()
                stmt = parse_formula(formula_text, tuple(notations))
                if free_vars(stmt):
                    raise LibraryError(
                        f"lemma {label} has free variables "
                        f"{sorted(free_vars(stmt))}", lineno)
                check_formula(stmt, {}, env)
                databases[current_db][label] = stmt
            elif head == "collection":
                m = _COLLECTION.match(rest)
                if m is None:
                    raise LibraryError("malformed `#collection`", lineno)
                db = m.group("db")
                if db not in databases:
                    raise LibraryError(f"unknown database {db}", lineno)
                coll = m.group("coll")
                if db not in collections[coll]:
                    collections[coll] = collections[coll] + (db,)
            else:
                raise LibraryError(f"unknown directive `#{head}`", lineno)
        except (ParseError, SortMismatch) as e:
            raise LibraryError(str(e), lineno)

    # core databases are always active as part of main
    for db in collections["core"]:
        if db not in collections["main"]:
            collections["main"] = collections["main"] + (db,)
    return env_now()


def load_library_file(path: str) -> Environment:
    with open(path, encoding="utf-8") as fh:
        return load_library(fh.read())
