"""Command-line front end.

Exit status: 0 on success (degenerate analyses included), 2 on input errors,
3 when the SVD fails to converge.
"""
from __future__ import annotations

import argparse
import sys

from .errors import ConvergenceError, ParameterError, ParseError, TournamentError
from .groups import GROUP_LETTERS, embedded_group, group_source
from .report import SECTIONS, analyze, to_json, to_text
from .tournament import load_tournament

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrsvd",
        description="SVD offense/defense analysis of round-robin tournaments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the full analysis on a tournament")
    src = an.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", metavar="LETTER",
                     help="embedded FIFA World Cup 2022 group (A..H)")
    src.add_argument("--file", metavar="PATH", help="tournament file (.rrt)")
    an.add_argument("--section", choices=SECTIONS, default="all")
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.add_argument("--rank", type=int, default=1, metavar="K",
                    help="order of the predicted matrix (default 1)")
    an.add_argument("--seed", type=int, default=None, metavar="N",
                    help="coin-toss seed, overrides the file's seed")
    an.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    an.add_argument("--diagonal-rule", action="store_true",
                    help="ignore any diagonal override and use row/column means")

    show = sub.add_parser("group", help="print an embedded group in tournament-file format")
    show.add_argument("letter", choices=GROUP_LETTERS + tuple(x.lower() for x in GROUP_LETTERS))
    return parser


def _analyze(args) -> int:
    if args.seed is not None and args.seed < 0:
        raise ParameterError("--seed must be unsigned")
    t = embedded_group(args.group) if args.group else load_tournament(args.file)
    report = analyze(t, rank=args.rank, seed=args.seed,
                     use_diagonal_override=not args.diagonal_rule)
    render = to_json if args.format == "json" else to_text
    text = render(report, args.section)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "group":
            sys.stdout.write(group_source(args.letter))
            return EXIT_OK
        return _analyze(args)
    except ConvergenceError as exc:
        print(f"rrsvd: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ParseError, TournamentError, ParameterError) as exc:
        print(f"rrsvd: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"rrsvd: cannot read/write: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
