"""Exact matchers: run-length Shift-And/BNDM, classic baselines, the naive oracle.

Every matcher returns a sorted list of 0-based occurrence start positions.
Hot loops live in a kernel backend: the compiled ``_ckernels`` extension when
it was built, else ``_pykernels``. Set ``RLEMATCH_PURE_PYTHON=1`` to force the
fallback, or pass ``backend="python"`` / ``backend="compiled"`` per call.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterable, Iterator, Optional, Union

from . import _pykernels
from .bitvec import WORD_BITS, BitVec, and_, is_zero, make, shl1, test_high
from .rle import Run, RunSeq, runs_of
from .tables import (
    EmptyPatternError,
    PatternTables,
    SuffixTables,
    build_classic_table,
    build_prefix_tables,
)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

if _ckernels is not None and not os.environ.get("RLEMATCH_PURE_PYTHON"):
    DEFAULT_BACKEND = "compiled"
else:
    DEFAULT_BACKEND = "python"

ALGORITHMS = ("auto", "rl-shift-and", "rl-bndm", "shift-and", "bndm", "naive")
RANDOM_ACCESS_ALGORITHMS = frozenset({"rl-bndm", "shift-and", "bndm", "naive"})

RUN_BATCH = 1 << 14

TextSource = Union[bytes, bytearray, memoryview, Iterable[Run]]


class IncompatibleSourceError(ValueError):
    """The chosen algorithm needs random access but got a run stream."""


@dataclass
class SearchStats:
    algorithm: str = ""
    backend: str = ""
    transitions: int = 0


def get_backend(name: Optional[str] = None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}"
        ) from None


def _finish(starts: list[int], kern, transitions: int, stats: Optional[SearchStats], algorithm: str) -> list[int]:
    if stats is not None:
        stats.algorithm = algorithm
        stats.backend = kern.NAME
        stats.transitions += transitions
    # kernels emit in ascending order; dedup guards double reports
    return sorted(set(starts))


def _is_raw(source) -> bool:
    return isinstance(source, (bytes, bytearray, memoryview)) or hasattr(source, "madvise")


def _require_pattern(pattern: bytes) -> bytes:
    pattern = bytes(pattern)
    if not pattern:
        raise EmptyPatternError("pattern must be non-empty")
    return pattern


@lru_cache(maxsize=64)
def prefix_tables(pattern: bytes) -> PatternTables:
    return build_prefix_tables(pattern)


@lru_cache(maxsize=64)
def reversed_tables(pattern: bytes) -> PatternTables:
    return build_prefix_tables(pattern[::-1])


@lru_cache(maxsize=64)
def classic_tables(pattern: bytes):
    return build_classic_table(pattern)


def naive_search(pattern: bytes, text: bytes) -> list[int]:
    """Compare the pattern at every position. Ground truth for tests."""
    pattern = _require_pattern(pattern)
    m = len(pattern)
    return [i for i in range(len(text) - m + 1) if text[i:i + m] == pattern]


def classic_shift_and(pattern: bytes, text: bytes, *, backend=None, stats=None) -> list[int]:
    pattern = _require_pattern(pattern)
    kern = get_backend(backend)
    b = getattr(classic_tables(pattern), kern.ROWS)
    starts, steps = kern.shift_and(b, len(pattern), text)
    return _finish(starts, kern, steps, stats, "shift-and")


def classic_bndm(pattern: bytes, text: bytes, *, backend=None, stats=None) -> list[int]:
    pattern = _require_pattern(pattern)
    kern = get_backend(backend)
    b = getattr(classic_tables(pattern[::-1]), kern.ROWS)
    starts, steps = kern.bndm(b, len(pattern), text)
    return _finish(starts, kern, steps, stats, "bndm")


def _batched(runs: Iterable[Run]) -> Iterator[tuple[array, array]]:
    it = iter(runs)
    while True:
        chunk = list(islice(it, RUN_BATCH))
        if not chunk:
            return
        syms = array("B", [c for c, _ in chunk])
        lens = array("Q", [l for _, l in chunk])
        yield syms, lens


def rl_shift_and(tables: PatternTables, text_runs: TextSource, *, backend=None, stats=None) -> list[int]:
    """Scan the text one run per transition with the prefix automaton.

    ``text_runs`` may be raw bytes (runs are found on the fly) or any
    iterable of :class:`Run`, e.g. a decoded RLE1 stream.
    """
    kern = get_backend(backend)
    b1, b2 = getattr(tables, kern.ROWS)
    args = (b1, b2, tables.rho, tables.m, tables.ell)
    if _is_raw(text_runs):
        starts, steps = kern.rl_shift_and_text(*args, text_runs)
        return _finish(starts, kern, steps, stats, "rl-shift-and")
    starts = []
    steps = 0
    d, j = 0, 0
    for syms, lens in _batched(text_runs):
        found, n, d, j = kern.rl_shift_and_runs(*args, syms, lens, d, j)
        starts.extend(found)
        steps += n
    return _finish(starts, kern, steps, stats, "rl-shift-and")


def rl_shift_and_configs(tables: PatternTables, text_runs: Iterable[Run]) -> Iterator[BitVec]:
    """Yield the configuration after every text run, computed with BitVec ops.

    Reference formulation of the transition used by the kernels; handy for
    tracing and for cross-checking them.
    """
    d = make(tables.rho)
    for c, l in text_runs:
        d = and_(and_(shl1(d, inject_low=True), tables.b1[c]), tables.len_row(l))
        yield d


def rl_bndm(tables: PatternTables, text: bytes, *, backend=None, stats=None) -> list[int]:
    """Backward window scan; ``tables`` must come from the reversed pattern."""
    kern = get_backend(backend)
    b1, b2 = getattr(tables, kern.ROWS)
    starts, steps = kern.rl_bndm(b1, b2, tables.rho, tables.m, tables.ell, text)
    return _finish(starts, kern, steps, stats, "rl-bndm")


def single_symbol_match(symbol: int, m: int, text_runs: TextSource, *, stats=None) -> list[int]:
    """Occurrences of ``bytes([symbol]) * m``; covers patterns with one run."""
    if m < 1:
        raise EmptyPatternError("pattern must be non-empty")
    if _is_raw(text_runs):
        text_runs = runs_of(text_runs)
    out = []
    j = 0
    steps = 0
    for c, l in text_runs:
        if c == symbol and l >= m:
            out.extend(range(j, j + l - m + 1))
        j += l
        steps += 1
    if stats is not None:
        stats.algorithm = "single-symbol"
        stats.backend = _pykernels.NAME
        stats.transitions += steps
    return out


def suffix_prefix_lengths(stables: SuffixTables, s: bytes) -> set[int]:
    """All ``L >= 1`` such that ``s[:L]`` is a suffix of the pattern."""
    if not s:
        raise ValueError("input string must be non-empty")
    runs = runs_of(s)
    c0, l0 = next(runs)
    ell = stables.ell
    last_symbol = stables.pattern_runs[stables.rho - 1].symbol
    found = set()
    if c0 == last_symbol:
        found.update(range(1, min(l0, ell) + 1))
    d = and_(stables.b1[c0], stables.first_row(l0))
    j = l0
    for c, l in runs:
        d = and_(and_(shl1(d, inject_low=False), stables.b1[c]), stables.len_row(l))
        if is_zero(d):
            break
        if test_high(d):
            found.add(j + ell)
        j += l
    return found


def search(
    pattern: bytes,
    source: TextSource,
    algorithm: str = "auto",
    *,
    backend: Optional[str] = None,
    stats: Optional[SearchStats] = None,
) -> list[int]:
    """Find all occurrences of ``pattern`` in raw bytes or a run stream.

    ``auto`` uses the single-symbol scan for one-run patterns, run-wise
    Shift-And for run streams, run-length BNDM for raw text when the
    pattern's runs fit a machine word, and classic BNDM otherwise.
    """
    pattern = _require_pattern(pattern)
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    raw = _is_raw(source)
    if not raw and algorithm in RANDOM_ACCESS_ALGORITHMS:
        raise IncompatibleSourceError(
            f"{algorithm} needs random access to the text; got a run stream"
        )
    rho = len(RunSeq.from_bytes(pattern))
    if rho == 1 and algorithm in ("auto", "rl-shift-and", "rl-bndm"):
        return single_symbol_match(pattern[0], len(pattern), source, stats=stats)
    if algorithm == "auto":
        if not raw:
            algorithm = "rl-shift-and"
        elif rho <= WORD_BITS:
            algorithm = "rl-bndm"
        else:
            algorithm = "bndm"
    if algorithm == "rl-shift-and":
        return rl_shift_and(prefix_tables(pattern), source, backend=backend, stats=stats)
    if algorithm == "rl-bndm":
        return rl_bndm(reversed_tables(pattern), source, backend=backend, stats=stats)
    if algorithm == "shift-and":
        return classic_shift_and(pattern, source, backend=backend, stats=stats)
    if algorithm == "bndm":
        return classic_bndm(pattern, source, backend=backend, stats=stats)
    if stats is not None:
        stats.algorithm = "naive"
        stats.backend = _pykernels.NAME
    return naive_search(pattern, source)
