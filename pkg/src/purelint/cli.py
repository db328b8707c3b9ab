"""``purelint`` command line.

Exit codes: 0 success, 1 rule violations or corpus mismatches, 2 lex,
parse, I/O or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .conformance import ConfigError, Mode, RuleConfig
from .corpus import CorpusError, run_corpus
from .datalog import DatalogError, build_ra, parse_atom, ra_steps
from .oracles import caesar_encode, twin_primes
from .report import check_paths

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="purelint", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"purelint {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check files against the functional subset")
    check.add_argument("paths", nargs="+", metavar="PATHS")
    check.add_argument("--format", choices=("human", "json"), default="human")
    check.add_argument("--config", metavar="FILE", help="JSON rule configuration")
    mode = check.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="mode", action="store_const", const=Mode.STRICT)
    mode.add_argument("--lenient", dest="mode", action="store_const", const=Mode.LENIENT)

    corpus = sub.add_parser("corpus", help="run a pass/fail fixture corpus")
    corpus.add_argument("dir", metavar="DIR")

    d2ra = sub.add_parser("datalog2ra", help="translate a Datalog atom to relational algebra")
    d2ra.add_argument("atom", nargs="?", metavar="ATOM", help="atom text; read from stdin if omitted")
    d2ra.add_argument("--steps", action="store_true", help="print the expression after each step")

    oracle = sub.add_parser("oracle", help="run a reference implementation")
    which = oracle.add_subparsers(dest="oracle", required=True)
    caesar = which.add_parser("caesar", help="Caesar-shift lowercase letters")
    caesar.add_argument("n", type=int, metavar="N")
    caesar.add_argument("text", metavar="TEXT")
    twins = which.add_parser("twins", help="twin prime pairs up to N")
    twins.add_argument("n", type=int, metavar="N")
    return parser


def _err(message: str) -> None:
    print(f"purelint: {message}", file=sys.stderr)


def cmd_check(args: argparse.Namespace) -> int:
    try:
        config = RuleConfig.load(args.config) if args.config else RuleConfig()
    except (OSError, ConfigError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    if args.mode is not None:
        config = config.with_mode(args.mode)
    try:
        report = check_paths(args.paths, config)
    except (OSError, UnicodeDecodeError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    if args.format == "json":
        sys.stdout.write(report.render_json())
    else:
        sys.stdout.write(report.render_human())
    for f in report.files:
        if f.problem is not None:
            _err(f"{f.path}:{f.problem.line}:{f.problem.col}: {f.problem.kind} error: {f.problem.message}")
    return report.exit_code


def cmd_corpus(args: argparse.Namespace) -> int:
    try:
        result = run_corpus(args.dir)
    except (CorpusError, OSError, UnicodeDecodeError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    for w in result.warnings:
        _err(f"warning: {w}")
    for m in result.mismatches:
        print(m)
    print(result.summary())
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_datalog2ra(args: argparse.Namespace) -> int:
    text = args.atom if args.atom is not None else sys.stdin.read()
    text = text.strip()
    try:
        query = build_ra(parse_atom(text))
    except DatalogError as exc:
        _err(f"offset {exc.position}: {exc.message}")
        return EXIT_ERROR
    for w in query.warnings:
        _err(f"warning: {w}")
    steps = ra_steps(query)
    if args.steps:
        for label, expr in steps:
            print(f"{label}: {expr}")
    else:
        print(steps[-1][1])
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.oracle == "caesar":
        print(caesar_encode(args.n, args.text))
        return EXIT_OK
    if args.n < 2:
        _err("twins needs N >= 2")
        return EXIT_ERROR
    for pair in twin_primes(args.n):
        print(f"{pair.first} {pair.second}")
    return EXIT_OK


_COMMANDS = {
    "check": cmd_check,
    "corpus": cmd_corpus,
    "datalog2ra": cmd_datalog2ra,
    "oracle": cmd_oracle,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
