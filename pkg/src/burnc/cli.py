"""Command-line entry point: ``burnc run`` and ``burnc check``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dsl
from .runner import Executor, emit

EXIT_OK = 0
EXIT_COMMAND_ERROR = 1
EXIT_PARSE_ERROR = 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="burnc", description="Combinatorial equivariant Burnside groups.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="parse and execute a script")
    run.add_argument("file", help="script path, or - for stdin")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--max-generators", type=int, default=None, metavar="N")
    run.add_argument("--max-relations", type=int, default=None, metavar="N")
    run.add_argument("--threads", type=int, default=1, metavar="N",
                     help="accepted for compatibility; execution is single-threaded")
    run.add_argument("--timing", action="store_true", help="report per-command wall time")
    run.add_argument("--no-b2-on-b1-pairs", action="store_true",
                     help="skip (B2) rows for pairs already killed by (B1)")
    chk = sub.add_parser("check", help="parse and statically check a script")
    chk.add_argument("file")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        src = _read(args.file)
    except OSError as e:
        print(f"burnc: {e}", file=sys.stderr)
        return EXIT_COMMAND_ERROR
    try:
        script = dsl.parse(src)
    except dsl.ParseError as e:
        print(f"{args.file}:{e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    if args.cmd == "check":
        print(f"{args.file}: ok ({len(script.statements)} statements)")
        return EXIT_OK
    if args.threads < 1:
        print("burnc: --threads must be positive", file=sys.stderr)
        return EXIT_COMMAND_ERROR
    ex = Executor(max_generators=args.max_generators, max_relations=args.max_relations,
                  timing=args.timing, b2_on_b1_pairs=not args.no_b2_on_b1_pairs)
    report = ex.execute(script)
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_COMMAND_ERROR


if __name__ == "__main__":
    sys.exit(main())
