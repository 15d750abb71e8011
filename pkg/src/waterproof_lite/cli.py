"""Command-line entry point (`wp`)."""

from __future__ import annotations

import argparse
import sys

from . import __version__, grade as grade_mod, server
from .checking import check_document
from .doc import DocError, extract_sheet, parse_document, render
from .kernel import EMPTY_ENV
from .lang import ParseError, parse_script, print_sentence
from .library import LibraryError, load_library_file


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_env(path):
    return load_library_file(path) if path else EMPTY_ENV


def _cmd_check(args) -> int:
    env = _load_env(args.library)
    document = parse_document(_read(args.file))
    result = check_document(document, env, unit_timeout=args.timeout)
    for r in result.sentences:
        if r.status == "error":
            where = f"{r.span.start_line}:{r.span.start_col}" if r.span else "?"
            print(f"{args.file}:{where}: error: {r.diagnostic}")
    for u in result.units:
        print(f"{u.name}: {u.verdict}")
    for k, status in enumerate(result.area_status, start=1):
        print(f"input area {k}: {status}")
    return 0  # diagnostics are output, not a tool failure


def _cmd_grade(args) -> int:
    env = _load_env(args.library)
    original = parse_document(_read(args.original))
    submission = parse_document(_read(args.submission))
    report = grade_mod.grade(original, submission, env,
                             unit_timeout=args.timeout)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(grade_mod.report_to_json(report) + "\n")
    print(grade_mod.report_to_text(report))
    return 2 if report.tampered else 0


def _cmd_sheet(args) -> int:
    master = parse_document(_read(args.master))
    sheet = extract_sheet(master)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(render(sheet))
    return 0


def _cmd_serve(args) -> int:
    if args.http is not None:
        server.serve_http(args.http, args.host)
    else:
        server.serve_stdio()
    return 0


def _cmd_normalize(args) -> int:
    env = _load_env(args.library)
    sentences = parse_script(_read(args.file), env.notations)
    for sentence in sentences:
        print(print_sentence(sentence))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wp", description="proof checker for natural-language scripts")
    parser.add_argument("--version", action="version",
                        version=f"wp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a .wpd document")
    p.add_argument("file")
    p.add_argument("--library")
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("grade", help="grade a submission against a master")
    p.add_argument("--original", required=True)
    p.add_argument("--submission", required=True)
    p.add_argument("--library")
    p.add_argument("--json", help="also write a JSON report to this path")
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(run=_cmd_grade)

    p = sub.add_parser("sheet", help="strip input areas from a master file")
    p.add_argument("master")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(run=_cmd_sheet)

    p = sub.add_parser("serve", help="run the checking service")
    p.add_argument("--http", type=int, metavar="PORT")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--stdio", action="store_true")
    p.set_defaults(run=_cmd_serve)

    p = sub.add_parser("normalize",
                       help="print the canonical form of a proof script")
    p.add_argument("file", help="script path, or - for stdin")
    p.add_argument("--library")
    p.set_defaults(run=_cmd_normalize)

    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (OSError, DocError, LibraryError, ParseError) as e:
        print(f"wp: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
