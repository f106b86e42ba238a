"""Run-length encoding: run iteration, run coordinates and the RLE1 file codec.

RLE1 layout::

    b"RLE1" (symbol:u8 length:uleb128)*

Adjacent records carry distinct symbols and every length is >= 1, so a
well-formed file is the unique maximal-run decomposition of its payload.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO, Iterable, Iterator, NamedTuple, Optional

MAGIC = b"RLE1"
MAX_RUN_LENGTH = (1 << 64) - 1
MAX_VARINT_BYTES = 10
CHUNK_SIZE = 1 << 16

_RUN_RE = re.compile(rb"(.)\1*", re.DOTALL)


class Run(NamedTuple):
    symbol: int
    length: int


class RunCoords(NamedTuple):
    alpha: int
    beta: Optional[int]
    ell: Optional[int]


class RLEError(ValueError):
    """Malformed RLE1 stream."""

    code = "malformed"


class BadMagicError(RLEError):
    code = "bad-magic"


class TruncatedVarintError(RLEError):
    code = "truncated-varint"


class ZeroLengthRunError(RLEError):
    code = "zero-length-run"


class AdjacentRunError(RLEError):
    code = "adjacent-equal-symbols"


class RunLengthOverflowError(RLEError):
    code = "run-length-overflow"


@dataclass(frozen=True)
class RunSeq:
    """A validated sequence of maximal runs."""

    runs: tuple[Run, ...] = field(default=())

    def __post_init__(self):
        runs = tuple(Run(int(c), int(l)) for c, l in self.runs)
        prev = None
        for c, l in runs:
            if l < 1:
                raise ValueError(f"run length must be >= 1, got {l}")
            if not 0 <= c <= 255:
                raise ValueError(f"symbol must be a byte, got {c}")
            if c == prev:
                raise ValueError("adjacent runs share a symbol")
            prev = c
        object.__setattr__(self, "runs", runs)

    @classmethod
    def from_bytes(cls, text: bytes) -> "RunSeq":
        return cls(tuple(runs_of(text)))

    def __len__(self) -> int:
        return len(self.runs)

    def __iter__(self) -> Iterator[Run]:
        return iter(self.runs)

    def __getitem__(self, i: int) -> Run:
        return self.runs[i]

    @cached_property
    def alphas(self) -> tuple[int, ...]:
        """Start offset of every run plus the total length as a sentinel."""
        out = [0]
        for _, l in self.runs:
            out.append(out[-1] + l)
        return tuple(out)

    @property
    def total_length(self) -> int:
        return self.alphas[-1]

    def expand(self) -> bytes:
        return b"".join(bytes([c]) * l for c, l in self.runs)


def runs_of(text: bytes) -> Iterator[Run]:
    """Yield the maximal runs of ``text`` left to right."""
    for mo in _RUN_RE.finditer(text):
        start, end = mo.span()
        yield Run(text[start], end - start)


def run_coords(rs: RunSeq, i: int) -> RunCoords:
    """Start, end (inclusive) and length of run ``i``.

    ``i == len(rs)`` is allowed and yields only ``alpha = rs.total_length``.
    """
    if not 0 <= i <= len(rs):
        raise IndexError(f"run index {i} out of range 0..{len(rs)}")
    alpha = rs.alphas[i]
    if i == len(rs):
        return RunCoords(alpha, None, None)
    ell = rs.runs[i].length
    return RunCoords(alpha, alpha + ell - 1, ell)


def runs_of_reversed_window(text: bytes, b: int, s: int) -> Iterator[Run]:
    """Runs of ``text[b..s]`` reversed, scanning right to left in place."""
    if not 0 <= b <= s < len(text):
        raise IndexError(f"bad window [{b}, {s}] for text of length {len(text)}")
    p = s
    while p >= b:
        c = text[p]
        q = p - 1
        while q >= b and text[q] == c:
            q -= 1
        yield Run(c, p - q)
        p = q


def encode_varint(value: int) -> bytes:
    if value < 0 or value > MAX_RUN_LENGTH:
        raise RunLengthOverflowError(f"run length {value} does not fit in 64 bits")
    out = bytearray()
    while value >= 0x80:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    out.append(value)
    return bytes(out)


def write_runs(runs: Iterable[Run], output: BinaryIO) -> None:
    """Write an RLE1 stream from runs already in maximal form."""
    output.write(MAGIC)
    buf = bytearray()
    for c, l in runs:
        buf.append(c)
        buf += encode_varint(l)
        if len(buf) >= CHUNK_SIZE:
            output.write(buf)
            buf.clear()
    output.write(buf)


def _stream_runs(input: BinaryIO, chunk_size: int) -> Iterator[Run]:
    # merges runs that straddle chunk boundaries
    cur_sym = -1
    cur_len = 0
    while True:
        chunk = input.read(chunk_size)
        if not chunk:
            break
        for c, l in runs_of(chunk):
            if c == cur_sym:
                cur_len += l
            else:
                if cur_len:
                    yield Run(cur_sym, cur_len)
                cur_sym, cur_len = c, l
    if cur_len:
        yield Run(cur_sym, cur_len)


def rle_encode_stream(input: BinaryIO, output: BinaryIO, chunk_size: int = CHUNK_SIZE) -> None:
    write_runs(_stream_runs(input, chunk_size), output)


def read_runs(input: BinaryIO, chunk_size: int = CHUNK_SIZE) -> Iterator[Run]:
    """Parse an RLE1 stream incrementally, yielding validated runs."""
    magic = input.read(len(MAGIC))
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, got {magic!r}")
    buf = b""
    pos = 0
    prev = -1
    while True:
        chunk = input.read(chunk_size)
        if not chunk:
            if pos < len(buf):
                raise TruncatedVarintError("stream ends inside a record")
            return
        buf = buf[pos:] + chunk
        pos = 0
        n = len(buf)
        while pos < n:
            sym = buf[pos]
            q = pos + 1
            value = 0
            shift = 0
            while q < n:
                byte = buf[q]
                q += 1
                value |= (byte & 0x7F) << shift
                if byte < 0x80:
                    break
                shift += 7
                if q - pos - 1 >= MAX_VARINT_BYTES:
                    raise RunLengthOverflowError("varint longer than 10 bytes")
            else:
                break  # record incomplete, wait for the next chunk
            if value > MAX_RUN_LENGTH:
                raise RunLengthOverflowError(f"run length {value} does not fit in 64 bits")
            if value == 0:
                raise ZeroLengthRunError(f"zero-length run for symbol {sym}")
            if sym == prev:
                raise AdjacentRunError(f"adjacent runs share symbol {sym}")
            prev = sym
            pos = q
            yield Run(sym, value)


def rle_decode_stream(input: BinaryIO, output: BinaryIO, chunk_size: int = CHUNK_SIZE) -> None:
    for c, l in read_runs(input, chunk_size):
        piece = bytes([c]) * min(l, chunk_size)
        while l >= len(piece):
            output.write(piece)
            l -= len(piece)
        if l:
            output.write(piece[:l])


def encode_bytes(data: bytes) -> bytes:
    out = bytearray(MAGIC)
    for c, l in runs_of(data):
        out.append(c)
        out += encode_varint(l)
    return bytes(out)


def decode_bytes(data: bytes) -> bytes:
    out = io.BytesIO()
    rle_decode_stream(io.BytesIO(data), out)
    return out.getvalue()
