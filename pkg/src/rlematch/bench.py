"""Synthetic repetitive texts and a timing harness for the matchers."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import matchers
from .rle import RunSeq, runs_of
from .tables import build_prefix_tables

GEOMETRIC = "geometric"
FIXED = "fixed"

DEFAULT_ALGORITHMS = ("rl-shift-and", "rl-bndm", "shift-and", "bndm")


class CorrectnessError(RuntimeError):
    """Algorithms disagreed on a benchmark instance; no timings are reported."""


@dataclass(frozen=True)
class GenSpec:
    alphabet_size: int = 4
    length: int = 100_000
    mean_run: float = 8.0
    distribution: str = GEOMETRIC
    seed: int = 0

    def validate(self) -> None:
        if not 2 <= self.alphabet_size <= 256:
            raise ValueError(
                f"alphabet_size must be in 2..256 so adjacent runs can differ, got {self.alphabet_size}"
            )
        if self.length < 0:
            raise ValueError("length must be >= 0")
        if self.mean_run < 1:
            raise ValueError("mean_run must be >= 1")
        if self.distribution not in (GEOMETRIC, FIXED):
            raise ValueError(f"unknown run length distribution {self.distribution!r}")
        if self.distribution == FIXED and int(self.mean_run) != self.mean_run:
            raise ValueError("fixed run length must be an integer")


def alphabet(size: int) -> bytes:
    if size <= 26:
        return bytes(range(ord("a"), ord("a") + size))
    return bytes(range(size))


def gen_text(spec: GenSpec) -> bytes:
    """Deterministic text whose runs follow ``spec``; adjacent runs differ."""
    spec.validate()
    n = spec.length
    if n == 0:
        return b""
    rng = np.random.default_rng(spec.seed)
    sigma = spec.alphabet_size
    lengths = []
    total = 0
    block = max(16, int(n / spec.mean_run * 1.1) + 16)
    while total < n:
        if spec.distribution == GEOMETRIC:
            chunk = rng.geometric(1.0 / spec.mean_run, size=block)
        else:
            chunk = np.full(block, int(spec.mean_run), dtype=np.int64)
        lengths.append(chunk)
        total += int(chunk.sum())
    lengths = np.concatenate(lengths)
    steps = rng.integers(1, sigma, size=len(lengths))
    steps[0] = rng.integers(0, sigma)
    symbols = np.cumsum(steps) % sigma
    table = np.frombuffer(alphabet(sigma), dtype=np.uint8)
    return np.repeat(table[symbols], lengths)[:n].tobytes()


@dataclass(frozen=True)
class PatternRule:
    """How to draw patterns: substrings of the text (``source="text"``) or random."""

    length: int
    count: int = 1
    source: str = "text"
    max_rho: Optional[int] = None
    seed: int = 1


def sample_patterns(text: bytes, rule: PatternRule, spec: GenSpec) -> list[bytes]:
    rng = np.random.default_rng(rule.seed)
    out = []
    attempts = 0
    while len(out) < rule.count:
        attempts += 1
        if attempts > 1000 * rule.count:
            raise ValueError(f"could not sample patterns satisfying {rule}")
        if rule.source == "text":
            if rule.length > len(text):
                raise ValueError("pattern longer than text")
            i = int(rng.integers(0, len(text) - rule.length + 1))
            p = text[i:i + rule.length]
        elif rule.source == "random":
            p = gen_text(
                GenSpec(spec.alphabet_size, rule.length, spec.mean_run, spec.distribution,
                        int(rng.integers(0, 2**32)))
            )
        else:
            raise ValueError(f"unknown pattern source {rule.source!r}")
        if rule.max_rho is not None and len(RunSeq.from_bytes(p)) > rule.max_rho:
            continue
        out.append(p)
    return out


@dataclass
class BenchReport:
    algorithm: str
    backend: str
    n: int
    text_runs: int
    m: int
    rho: int
    preprocess_s: float
    wall_s: float
    median_s: float
    throughput: float
    transitions: int
    matches: int


def _prepare(algorithm: str, pattern: bytes, backend: str) -> Callable[[bytes, matchers.SearchStats], list[int]]:
    """Build tables up front and return the search call to time."""
    rho = len(RunSeq.from_bytes(pattern))
    if algorithm in ("rl-shift-and", "rl-bndm") and rho == 1:
        return lambda text, st: matchers.single_symbol_match(pattern[0], len(pattern), text, stats=st)
    kern = matchers.get_backend(backend)
    if algorithm == "rl-shift-and":
        tables = build_prefix_tables(pattern)
        getattr(tables, kern.ROWS)
        return lambda text, st: matchers.rl_shift_and(tables, text, backend=backend, stats=st)
    if algorithm == "rl-bndm":
        tables = build_prefix_tables(pattern[::-1])
        getattr(tables, kern.ROWS)
        return lambda text, st: matchers.rl_bndm(tables, text, backend=backend, stats=st)
    if algorithm in ("shift-and", "bndm"):
        # warm the shared cache used by the classic matchers
        src = pattern if algorithm == "shift-and" else pattern[::-1]
        getattr(matchers.classic_tables(src), kern.ROWS)
        fn = matchers.classic_shift_and if algorithm == "shift-and" else matchers.classic_bndm
        return lambda text, st: fn(pattern, text, backend=backend, stats=st)
    if algorithm == "naive":
        return lambda text, st: matchers.naive_search(pattern, text)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def measure(algorithm: str, pattern: bytes, text: bytes, backend: str, repeat: int = 3,
            text_runs: Optional[int] = None) -> tuple[BenchReport, list[int]]:
    t0 = time.perf_counter()
    call = _prepare(algorithm, pattern, backend)
    prep = time.perf_counter() - t0
    times = []
    result: list[int] = []
    stats = matchers.SearchStats()
    for _ in range(max(1, repeat)):
        stats = matchers.SearchStats()
        t0 = time.perf_counter()
        result = call(text, stats)
        times.append(time.perf_counter() - t0)
    if text_runs is None:
        text_runs = sum(1 for _ in runs_of(text))
    best = min(times)
    report = BenchReport(
        algorithm=algorithm,
        backend=backend,
        n=len(text),
        text_runs=text_runs,
        m=len(pattern),
        rho=len(RunSeq.from_bytes(pattern)),
        preprocess_s=prep,
        wall_s=best,
        median_s=statistics.median(times),
        throughput=len(text) / best if best > 0 else float("inf"),
        transitions=stats.transitions,
        matches=len(result),
    )
    return report, result


def run_benchmark(
    texts: Sequence[GenSpec],
    patterns: PatternRule,
    algorithms: Iterable[str] = DEFAULT_ALGORITHMS,
    backends: Optional[Iterable[str]] = None,
    repeat: int = 3,
) -> list[BenchReport]:
    """Time every (text, pattern, algorithm, backend) combination.

    Raises :class:`CorrectnessError` if any two combinations disagree on the
    occurrences of a pattern.
    """
    algorithms = list(algorithms)
    backends = list(backends or [matchers.DEFAULT_BACKEND])
    reports = []
    for spec in texts:
        text = gen_text(spec)
        nruns = sum(1 for _ in runs_of(text))
        for pattern in sample_patterns(text, patterns, spec):
            pending = []
            reference = None
            for backend in backends:
                for algorithm in algorithms:
                    report, result = measure(algorithm, pattern, text, backend, repeat, nruns)
                    if reference is None:
                        reference = (report, result)
                    elif result != reference[1]:
                        ref = reference[0]
                        raise CorrectnessError(
                            f"{algorithm}/{backend} found {len(result)} matches but "
                            f"{ref.algorithm}/{ref.backend} found {ref.matches} "
                            f"(m={len(pattern)}, n={len(text)})"
                        )
                    pending.append(report)
            reports.extend(pending)
    return reports


def format_csv(reports: Sequence[BenchReport]) -> str:
    buf = io.StringIO()
    names = [f.name for f in fields(BenchReport)]
    writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(asdict(r))
    return buf.getvalue()


def format_table(reports: Sequence[BenchReport]) -> str:
    header = ("algorithm", "backend", "n", "runs", "m", "rho", "prep ms", "time ms", "MB/s", "transitions", "matches")
    rows = [header]
    for r in reports:
        rows.append((
            r.algorithm, r.backend, str(r.n), str(r.text_runs), str(r.m), str(r.rho),
            f"{r.preprocess_s * 1e3:.2f}", f"{r.wall_s * 1e3:.2f}", f"{r.throughput / 1e6:.1f}",
            str(r.transitions), str(r.matches),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
