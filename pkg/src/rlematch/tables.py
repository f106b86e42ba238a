"""Pattern preprocessing for the run-length encoded automata.

Run ``i`` of the pattern (0-based) owns bit ``i`` of every row. Rows are
indexed by symbol (``b1``) or by text run length ``1..m+1`` (``b2``,
``b2s``, ``b3``); longer runs are clamped onto row ``m+1`` by
:meth:`PatternTables.len_row`.

Prefix tables (``b2``) admit any run length ``>= l`` at the first and last
pattern run because of the self-loops on the initial and final states.
Suffix tables drop the loop on the initial state (``b2s``) and add ``b3``
for the very first transition, where every state is live.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bitvec import WORD_BITS, BitVec
from .rle import RunSeq

ALPHABET_SIZE = 256


class EmptyPatternError(ValueError):
    pass


class SingleRunPatternError(ValueError):
    """Pattern has one distinct symbol; use the single-symbol matcher."""


def _check_pattern(pattern: bytes) -> RunSeq:
    if len(pattern) == 0:
        raise EmptyPatternError("pattern must be non-empty")
    runs = RunSeq.from_bytes(pattern)
    if len(runs) < 2:
        raise SingleRunPatternError(
            "pattern needs at least two distinct symbols for the run-length tables"
        )
    return runs


def _rows_to_words(rows: list[int], rho: int) -> np.ndarray:
    nw = (rho + WORD_BITS - 1) // WORD_BITS
    if nw == 1:
        return np.array(rows, dtype=np.uint64).reshape(len(rows), 1)
    size = nw * (WORD_BITS // 8)
    raw = b"".join(v.to_bytes(size, "little") for v in rows)
    return np.frombuffer(raw, dtype="<u8").astype(np.uint64).reshape(len(rows), nw)


def _vectors(rows: list[int], width: int) -> tuple[BitVec, ...]:
    # most rows repeat (absent symbols, lengths past the longest run)
    seen: dict[int, BitVec] = {}
    out = []
    for v in rows:
        vec = seen.get(v)
        if vec is None:
            vec = seen[v] = BitVec.from_int(width, v)
        out.append(vec)
    return tuple(out)


def _symbol_rows(runs: RunSeq) -> list[int]:
    b1 = [0] * ALPHABET_SIZE
    for i, (c, _) in enumerate(runs):
        b1[c] |= 1 << i
    return b1


@dataclass(frozen=True, eq=False)
class PatternTables:
    b1: tuple[BitVec, ...]
    b2: tuple[BitVec, ...]
    rho: int
    ell: int
    m: int
    pattern_runs: RunSeq

    @property
    def nwords(self) -> int:
        return self.b1[0].nwords

    def len_row(self, length: int) -> BitVec:
        return self.b2[min(length, self.m + 1)]

    @cached_property
    def int_rows(self) -> tuple[list[int], list[int]]:
        return [v.to_int() for v in self.b1], [v.to_int() for v in self.b2]

    @cached_property
    def word_rows(self) -> tuple[np.ndarray, np.ndarray]:
        b1, b2 = self.int_rows
        return _rows_to_words(b1, self.rho), _rows_to_words(b2, self.rho)

    def footprint_bytes(self) -> int:
        """Bytes held by the dense ``b1`` and ``b2`` word arrays."""
        return (len(self.b1) + len(self.b2)) * self.nwords * (WORD_BITS // 8)


def build_prefix_tables(pattern: bytes) -> PatternTables:
    """Symbol and run-length masks for the prefix automaton.

    Also serves the backward matcher when given the reversed pattern, since
    the restricted suffix automaton it simulates obeys the same transitions.
    """
    runs = _check_pattern(pattern)
    rho = len(runs)
    m = len(pattern)
    b1 = _symbol_rows(runs)
    b2 = [0] * (m + 2)  # row 0 is never looked up
    ell = 0
    for i, (_, l) in enumerate(runs):
        h = 1 << i
        if i == 0 or i == rho - 1:
            ell = l
            for j in range(l, m + 2):
                b2[j] |= h
        else:
            b2[l] |= h
    return PatternTables(
        b1=_vectors(b1, rho),
        b2=_vectors(b2, rho),
        rho=rho,
        ell=ell,
        m=m,
        pattern_runs=runs,
    )


@dataclass(frozen=True, eq=False)
class SuffixTables:
    b1: tuple[BitVec, ...]
    b2s: tuple[BitVec, ...]
    b3: tuple[BitVec, ...]
    rho: int
    ell: int
    m: int
    pattern_runs: RunSeq

    def len_row(self, length: int) -> BitVec:
        return self.b2s[min(length, self.m + 1)]

    def first_row(self, length: int) -> BitVec:
        return self.b3[min(length, self.m + 1)]


def build_suffix_tables(pattern: bytes) -> SuffixTables:
    runs = _check_pattern(pattern)
    rho = len(runs)
    m = len(pattern)
    b1 = _symbol_rows(runs)
    b2s = [0] * (m + 2)
    b3 = [0] * (m + 2)
    last = 1 << (rho - 1)
    for i, (_, l) in enumerate(runs):
        h = 1 << i
        if i == rho - 1:
            for j in range(l, m + 2):
                b2s[j] |= h
        else:
            b2s[l] |= h
        for j in range(1, l + 1):
            b3[j] |= h
    for j in range(1, m + 2):
        b3[j] |= last
    return SuffixTables(
        b1=_vectors(b1, rho),
        b2s=_vectors(b2s, rho),
        b3=_vectors(b3, rho),
        rho=rho,
        ell=runs[rho - 1].length,
        m=m,
        pattern_runs=runs,
    )


@dataclass(frozen=True, eq=False)
class ClassicTables:
    """One ``m``-bit mask per symbol; bit ``i`` set iff ``pattern[i] == c``."""

    b: tuple[BitVec, ...]
    m: int

    @cached_property
    def int_rows(self) -> list[int]:
        return [v.to_int() for v in self.b]

    @cached_property
    def word_rows(self) -> np.ndarray:
        return _rows_to_words(self.int_rows, self.m)


def build_classic_table(pattern: bytes) -> ClassicTables:
    if len(pattern) == 0:
        raise EmptyPatternError("pattern must be non-empty")
    m = len(pattern)
    rows = [0] * ALPHABET_SIZE
    for i, c in enumerate(pattern):
        rows[c] |= 1 << i
    return ClassicTables(b=_vectors(rows, m), m=m)
