"""Checking service for editors.

One JSON request/response schema (documented in protocol.md) over two
carriers: newline-delimited JSON on stdio, and HTTP POST /rpc.  Every
response is a pure function of the request payload — the document and
library travel in each request, so the server keeps no session state.
"""

from __future__ import annotations

import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import __version__, auto
from .checking import _collect_items, check_document
from .doc import DocError, parse_document
from .kernel import (
    KernelError, SortMismatch, check_formula, formula_str, goal_display,
    initial_state,
)
from .lang import GRAMMAR_VERSION, SNIPPETS, BadSentence, ParseError, \
    parse_formula
from .library import LibraryError, load_library
from .tactics import TacticError, expand_definition, help_notes, step

PROTOCOL_VERSION = "1"

# symbol-panel aliases; completion matches on the alias text
SYMBOLS: tuple[tuple[str, str], ...] = (
    ("\\forall", "∀"), ("\\exists", "∃"), ("\\in", "∈"), ("\\and", "∧"),
    ("\\or", "∨"), ("\\implies", "⇒"), ("\\Rightarrow", "⇒"),
    ("\\iff", "⇔"), ("\\Leftrightarrow", "⇔"), ("\\neg", "¬"),
    ("\\le", "≤"), ("\\leq", "≤"), ("\\ge", "≥"), ("\\geq", "≥"),
    ("\\infty", "∞"), ("\\epsilon", "ε"), ("\\varepsilon", "ε"),
    ("\\delta", "δ"), ("\\R", "ℝ"), ("\\N", "ℕ"), ("\\Z", "ℤ"),
    ("\\cdot", "·"),
)


class RpcError(Exception):
    def __init__(self, code: int, message: str, span=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span


def _load(params: dict):
    try:
        env = load_library(params.get("libraryText", ""))
    except LibraryError as e:
        raise RpcError(1, f"library: {e}")
    try:
        document = parse_document(params["docText"])
    except DocError as e:
        raise RpcError(1, f"document: {e}")
    except KeyError:
        raise RpcError(-32602, "missing docText")
    return document, env


def _state_at(document, env, line: int, col: int,
              budget: auto.SearchBudget = auto.DEFAULT_BUDGET):
    """Proof state just after the last sentence ending at or before the
    position; None when the position precedes every checked sentence."""
    items, _ = _collect_items(document, env)
    best = None
    state = None
    broken = True
    for sent, _area in items:
        if isinstance(sent, BadSentence):
            broken = True
            continue
        if sent.kind == "LemmaHeader":
            _name, target = sent.payload
            try:
                check_formula(target, {}, env)
                state = initial_state(target)
                broken = False
            except (KernelError, SortMismatch):
                broken = True
                continue
        elif broken or state is None:
            continue
        else:
            try:
                state = step(state, sent, env, budget).state
            except TacticError:
                broken = True
                continue
        span = sent.span
        if span is not None and (span.end_line, span.end_col) <= (line, col):
            best = state
    return best


def _rpc_check(params: dict) -> dict:
    document, env = _load(params)
    result = check_document(document, env)
    return {
        "sentences": [
            {"span": r.span.to_json() if r.span else None,
             "status": r.status,
             "diagnostic": r.diagnostic,
             "goalsAfter": list(r.goals_after)}
            for r in result.sentences
        ],
        "units": [
            {"name": u.name, "verdict": u.verdict,
             "firstDiagnostic": u.first_diagnostic}
            for u in result.units
        ],
        "areaStatus": list(result.area_status),
    }


def _rpc_goals(params: dict) -> dict:
    document, env = _load(params)
    pos = params.get("position") or {}
    state = _state_at(document, env, int(pos.get("line", 1)),
                      int(pos.get("col", 1)))
    if state is None:
        raise RpcError(2, "no proof state at this position")
    if not state.goals:
        return {"goalOnly": "", "goalCount": 0,
                "fullContext": {"variables": [], "hypotheses": [],
                                "target": ""}}
    g = state.focused
    return {
        "goalOnly": goal_display(g),
        "goalCount": len(state.goals),
        "fullContext": {
            "variables": [{"name": n, "sort": str(s)} for n, s in g.variables],
            "hypotheses": [{"label": h.label,
                            "statement": formula_str(h.statement)}
                           for h in g.hypotheses],
            "target": formula_str(g.target),
        },
    }


def _rpc_expand(params: dict) -> dict:
    try:
        env = load_library(params.get("libraryText", ""))
    except LibraryError as e:
        raise RpcError(1, f"library: {e}")
    try:
        f = parse_formula(params["formula"], env.notations)
    except ParseError as e:
        raise RpcError(1, str(e), e.span)
    except KeyError:
        raise RpcError(-32602, "missing formula")
    try:
        notes = expand_definition(params.get("name", ""), f, env)
    except TacticError as e:
        raise RpcError(2, e.message)
    return {"expanded": notes[0]}


def _rpc_help(params: dict) -> dict:
    document, env = _load(params)
    pos = params.get("position") or {}
    state = _state_at(document, env, int(pos.get("line", 1)),
                      int(pos.get("col", 1)))
    if state is None or not state.goals:
        raise RpcError(2, "no open goal at this position")
    notes = help_notes(state.focused, env)
    return {"suggestion": notes[0], "notes": list(notes)}


def _rpc_complete(params: dict) -> dict:
    prefix = params.get("prefix", "")
    items = []
    for alias, symbol in SYMBOLS:
        if alias.startswith(prefix):
            items.append({"label": alias, "insertText": symbol,
                          "kind": "symbol"})
    low = prefix.lower()
    for kind, template in SNIPPETS:
        if template.lower().startswith(low):
            items.append({"label": kind, "insertText": template,
                          "kind": "snippet"})
    return {"items": items}


def _rpc_version(_params: dict) -> dict:
    return {"protocol": PROTOCOL_VERSION, "grammar": GRAMMAR_VERSION,
            "checker": __version__}


_METHODS = {
    "wp/check": _rpc_check,
    "wp/goals": _rpc_goals,
    "wp/expand": _rpc_expand,
    "wp/help": _rpc_help,
    "wp/complete": _rpc_complete,
    "wp/version": _rpc_version,
}


def handle(request: dict) -> dict:
    """Process one request object; always returns a response object."""
    rid = request.get("id") if isinstance(request, dict) else None
    if not isinstance(request, dict) or "method" not in request:
        return {"id": rid,
                "error": {"code": -32600, "message": "invalid request"}}
    method = _METHODS.get(request["method"])
    if method is None:
        return {"id": rid, "error": {"code": -32601,
                                     "message": f"unknown method "
                                                f"{request['method']}"}}
    params = request.get("params") or {}
    try:
        return {"id": rid, "result": method(params)}
    except RpcError as e:
        error = {"code": e.code, "message": e.message}
        if e.span is not None:
            error["span"] = e.span.to_json()
        return {"id": rid, "error": error}
    except Exception as e:  # never crash the transport loop
        return {"id": rid, "error": {"code": -32603, "message": str(e)}}


def serve_stdio(stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as e:
            response = {"id": None,
                        "error": {"code": -32700, "message": str(e)}}
        else:
            response = handle(request)
        stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        stdout.flush()


class _Handler(BaseHTTPRequestHandler):
    def do_POST(self):  # noqa: N802 (http.server API)
        if self.path != "/rpc":
            self.send_error(404)
            return
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length)
        try:
            request = json.loads(body)
            response = handle(request)
        except json.JSONDecodeError as e:
            response = {"id": None,
                        "error": {"code": -32700, "message": str(e)}}
        payload = json.dumps(response, ensure_ascii=False).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


def make_http_server(port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), _Handler)


def serve_http(port: int, host: str = "127.0.0.1") -> None:
    make_http_server(port, host).serve_forever()
