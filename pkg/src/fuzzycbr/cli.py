"""Command-line entry point: ``fuzzycbr {assess,compare,ingest,simulate}``.

Exit codes: 0 success, 1 input or validation error, 2 degenerate system.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .assessment import (
    SystemRecord,
    assess_system,
    compare_systems,
    format_case_log,
    grades_from_case_log,
    load_case_log,
)
from .errors import DegenerateSystemError, FuzzyCBRError
from .sim import CaseLibrary, GradeThresholds, load_problems, run_batch

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_assess(args) -> int:
    result = assess_system(SystemRecord.load(args.input))
    if args.format == "json":
        sys.stdout.write(_dump(result.to_dict(include_profiles=args.profiles)))
    else:
        sys.stdout.write(result.render_text(include_profiles=args.profiles))
    return EXIT_OK


def cmd_compare(args) -> int:
    report = compare_systems([SystemRecord.load(args.a), SystemRecord.load(args.b)])
    sys.stdout.write(_dump(report.to_dict()) if args.format == "json" else report.render_text())
    return EXIT_OK


def cmd_ingest(args) -> int:
    record = grades_from_case_log(load_case_log(args.log), name=args.name)
    Path(args.out).write_text(record.to_json(), encoding="utf-8")
    return EXIT_OK


def cmd_simulate(args) -> int:
    library = CaseLibrary.load(args.library)
    problems = load_problems(args.problems)
    result = run_batch(library, problems, args.thresholds)
    Path(args.out).write_text(format_case_log(result.log), encoding="utf-8")
    if args.save_library:
        result.library.save(args.save_library)
    return EXIT_OK


def _thresholds(text: str) -> GradeThresholds:
    try:
        return GradeThresholds.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzycbr", description="Fuzzy assessment of case-based reasoning systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("assess", help="assess one system record")
    p.add_argument("--input", required=True, help="system record JSON")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--profiles", action="store_true", help="append the 125-row profile table")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("compare", help="compare two system records under both models")
    p.add_argument("--a", required=True, help="first system record JSON")
    p.add_argument("--b", required=True, help="second system record JSON")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("ingest", help="tally a CSV case log into a system record")
    p.add_argument("--log", required=True, help="CSV case log")
    p.add_argument("--name", required=True, help="system name")
    p.add_argument("--out", required=True, help="output record JSON")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("simulate", help="run the CBR engine and write a case log")
    p.add_argument("--library", required=True, help="case library JSON")
    p.add_argument("--problems", required=True, help="problems JSON")
    p.add_argument("--thresholds", type=_thresholds, default=GradeThresholds(),
                   help="grade cut points t1,t2,t3,t4 (default 0.2,0.4,0.6,0.8)")
    p.add_argument("--out", required=True, help="output CSV case log")
    p.add_argument("--save-library", help="also write the grown library here")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except DegenerateSystemError as exc:
        print(f"fuzzycbr: degenerate system: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (FuzzyCBRError, ValueError, OSError) as exc:
        print(f"fuzzycbr: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
