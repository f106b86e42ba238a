"""Command-line front end.

Exit statuses follow grep: 0 when something matched, 1 when nothing did,
2 on any error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import os
import sys
from typing import BinaryIO, Iterator, Optional

from . import bench, matchers
from .bitvec import WORD_BITS
from .rle import RLEError, RunSeq, read_runs, rle_decode_stream, rle_encode_stream
from .tables import EmptyPatternError, build_prefix_tables

PROG = "rlematch"

EXIT_MATCH = 0
EXIT_NO_MATCH = 1
EXIT_ERROR = 2


def _err(msg: str) -> None:
    print(f"{PROG}: {msg}", file=sys.stderr)


@contextlib.contextmanager
def _open_in(path: str) -> Iterator[BinaryIO]:
    if path == "-":
        yield sys.stdin.buffer
    else:
        with open(path, "rb") as f:
            yield f


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[BinaryIO]:
    if path == "-":
        yield sys.stdout.buffer
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as f:
            yield f


def _pattern(args) -> bytes:
    if args.pattern_file is not None:
        with _open_in(args.pattern_file) as f:
            pattern = f.read()
    else:
        pattern = os.fsencode(args.pattern)
    if not pattern:
        raise EmptyPatternError("pattern must be non-empty")
    return pattern


def _search_one(pattern: bytes, path: str, args) -> list[int]:
    with _open_in(path) as f:
        if not args.rle:
            return matchers.search(pattern, f.read(), args.algo, backend=args.backend)
        if args.algo in matchers.RANDOM_ACCESS_ALGORITHMS:
            # these need the decoded text in memory
            buf = io.BytesIO()
            rle_decode_stream(f, buf)
            return matchers.search(pattern, buf.getvalue(), args.algo, backend=args.backend)
        return matchers.search(pattern, read_runs(f), args.algo, backend=args.backend)


def cmd_search(args) -> int:
    try:
        pattern = _pattern(args)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    files = args.files or ["-"]
    prefix = len(files) > 1
    out = sys.stdout
    status = EXIT_NO_MATCH
    failed = False
    for path in files:
        try:
            starts = _search_one(pattern, path, args)
        except RLEError as exc:
            _err(f"{path}: malformed RLE1 input ({exc.code}): {exc}")
            failed = True
            continue
        except (OSError, ValueError) as exc:
            _err(f"{path}: {exc}")
            failed = True
            continue
        if starts:
            status = EXIT_MATCH
        if args.quiet:
            continue
        label = f"{path}:" if prefix else ""
        if args.count:
            out.write(f"{label}{len(starts)}\n")
        else:
            out.writelines(f"{label}{p}\n" for p in starts)
    out.flush()
    return EXIT_ERROR if failed else status


def _codec(args, fn) -> int:
    try:
        with _open_in(args.input) as src, _open_out(args.output) as dst:
            fn(src, dst)
    except RLEError as exc:
        _err(f"{args.input}: malformed RLE1 input ({exc.code}): {exc}")
        return EXIT_ERROR
    except OSError as exc:
        _err(str(exc))
        return EXIT_ERROR
    return 0


def cmd_encode(args) -> int:
    return _codec(args, rle_encode_stream)


def cmd_decode(args) -> int:
    return _codec(args, rle_decode_stream)


def stats_report(pattern: bytes) -> str:
    if not pattern:
        raise EmptyPatternError("pattern must be non-empty")
    runs = RunSeq.from_bytes(pattern)
    rho = len(runs)
    words = (rho + WORD_BITS - 1) // WORD_BITS
    lines = [f"m: {len(pattern)}", f"rho: {rho}", f"words_per_row: {words}"]
    if rho == 1:
        lines.append("table_bytes: 0")
        lines.append("note: single-symbol pattern; the single-symbol fallback matcher applies")
    else:
        tables = build_prefix_tables(pattern)
        lines.append(f"table_rows: {len(tables.b1)} symbol + {len(tables.b2)} length")
        lines.append(f"table_bytes: {tables.footprint_bytes()}")
        lines.append(f"last_run_length: {tables.ell}")
    return "\n".join(lines)


def cmd_stats(args) -> int:
    try:
        print(stats_report(_pattern(args)))
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_ERROR
    return 0


def cmd_bench(args) -> int:
    if args.backend == "all":
        backends = sorted(matchers.BACKENDS)
    else:
        backends = [args.backend or matchers.DEFAULT_BACKEND]
    try:
        spec = bench.GenSpec(
            alphabet_size=args.sigma,
            length=args.length,
            mean_run=args.mean_run,
            distribution=args.distribution,
            seed=args.seed,
        )
        rule = bench.PatternRule(
            length=args.pattern_length,
            count=args.patterns,
            source=args.pattern_source,
            max_rho=args.max_rho,
            seed=args.seed + 1,
        )
        reports = bench.run_benchmark(
            [spec], rule, args.algo or bench.DEFAULT_ALGORITHMS, backends, args.repeat
        )
    except bench.CorrectnessError as exc:
        _err(f"correctness failure: {exc}")
        return EXIT_ERROR
    except ValueError as exc:
        _err(str(exc))
        return EXIT_ERROR
    if args.format in ("table", "both"):
        print(bench.format_table(reports))
    if args.format == "both":
        print()
    if args.format in ("csv", "both"):
        sys.stdout.write(bench.format_csv(reports))
    return 0


def _add_pattern_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-p", "--pattern", help="literal pattern (bytes of the argument)")
    g.add_argument("-f", "--pattern-file", help="read the pattern verbatim from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Exact string matching with run-length encoded bit-parallel automata.",
    )
    backend_choices = sorted(matchers.BACKENDS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="report 0-based match offsets in files")
    _add_pattern_args(p)
    p.add_argument("--algo", choices=matchers.ALGORITHMS, default="auto")
    p.add_argument("--rle", action="store_true", help="inputs are RLE1-encoded")
    p.add_argument("--backend", choices=backend_choices, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("-c", "--count", action="store_true", help="print match counts only")
    mode.add_argument("-q", "--quiet", action="store_true", help="print nothing; use exit status")
    p.add_argument("files", nargs="*", help="input files ('-' for stdin, the default)")
    p.set_defaults(func=cmd_search)

    for name, func, what in (("encode", cmd_encode, "raw -> RLE1"), ("decode", cmd_decode, "RLE1 -> raw")):
        p = sub.add_parser(name, help=f"convert {what}")
        p.add_argument("input", help="input path or '-'")
        p.add_argument("output", help="output path or '-'")
        p.set_defaults(func=func)

    p = sub.add_parser("stats", help="print pattern run statistics and table size")
    _add_pattern_args(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="benchmark matchers on generated text")
    p.add_argument("--sigma", type=int, default=2, help="alphabet size (2..256)")
    p.add_argument("--length", type=int, default=1_000_000, help="text length in bytes")
    p.add_argument("--mean-run", type=float, default=16.0, help="mean run length")
    p.add_argument("--distribution", choices=(bench.GEOMETRIC, bench.FIXED), default=bench.GEOMETRIC)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--pattern-length", type=int, default=512)
    p.add_argument("--patterns", type=int, default=1, help="patterns per text")
    p.add_argument("--pattern-source", choices=("text", "random"), default="text")
    p.add_argument("--max-rho", type=int, default=None, help="reject sampled patterns with more runs")
    p.add_argument("--algo", action="append", choices=[a for a in matchers.ALGORITHMS if a != "auto"],
                   help="algorithm to time (repeatable; default: all bit-parallel ones)")
    p.add_argument("--backend", choices=backend_choices + ["all"], default=None)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--format", choices=("table", "csv", "both"), default="table")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, matching our error status
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
