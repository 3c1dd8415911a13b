"""Command-line interface: ``dusub {duas,analyze,check,export} FILE``.

Exit status is 0 on success (or solver/oracle agreement), 1 when ``check``
finds a discrepancy and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .analysis import analyze
from .errors import DusubError
from .formats import quiet_load
from .oracle import DEFAULT_EDGE_BOUND, compare_with_solver
from .render import discrepancy_text, duas_table, report_csv, report_dot, report_json, report_text

EXIT_OK = 0
EXIT_DISCREPANCY = 1
EXIT_INPUT = 2


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dusub",
        description="Data-flow subsumption analysis over annotated control-flow graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("duas", help="list the all-uses DU-associations")
    p.add_argument("file")

    p = sub.add_parser("analyze", help="local/global subsumption report")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    p.add_argument("--global", dest="include_global", action="store_true",
                   help="show global sets in text output (JSON and CSV always carry both)")
    p.add_argument("--figure", metavar="PATH", help="also write a bar chart of per-node counts")

    p = sub.add_parser("check", help="compare the solver with the bounded path oracle")
    p.add_argument("file")
    p.add_argument("--path-bound", type=_positive, default=DEFAULT_EDGE_BOUND, metavar="K",
                   help="maximum traversals of any one edge (default %(default)s)")

    p = sub.add_parser("export", help="export the annotated graph")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot",), default="dot")
    p.add_argument("--labels", choices=("local", "global"), default="local")
    return parser


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    try:
        doc, notes = quiet_load(args.file)
    except FileNotFoundError:
        print(f"dusub: error: file not found: {args.file}", file=stderr)
        return EXIT_INPUT
    except (OSError, UnicodeDecodeError) as exc:
        print(f"dusub: error: cannot read {args.file}: {exc}", file=stderr)
        return EXIT_INPUT
    except DusubError as exc:
        print(f"dusub: error: {args.file}: {exc}", file=stderr)
        return EXIT_INPUT
    for note in notes:
        print(f"dusub: warning: {note}", file=stderr)

    result = analyze(doc.graph, doc.annotations, doc.name)

    if args.command == "duas":
        stdout.write(duas_table(result.universe))
    elif args.command == "analyze":
        if args.format == "json":
            stdout.write(report_json(result))
        elif args.format == "csv":
            stdout.write(report_csv(result))
        else:
            stdout.write(report_text(result, include_global=args.include_global))
        if args.figure:
            from .plotting import save_subsumption_figure

            path = save_subsumption_figure(result, args.figure)
            print(f"dusub: wrote {path}", file=stderr)
    elif args.command == "check":
        report = compare_with_solver(result.state, result.graph, result.universe, args.path_bound)
        stdout.write(discrepancy_text(report, result.universe))
        return EXIT_OK if report.ok else EXIT_DISCREPANCY
    elif args.command == "export":
        stdout.write(report_dot(result, labels=args.labels))
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
