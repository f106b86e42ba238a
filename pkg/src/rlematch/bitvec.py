"""Fixed-width bit vectors stored as little-endian lists of 64-bit words.

Only the handful of operations needed by the bit-parallel automata are
provided: construction, a one-position left shift, conjunction, disjunction
and single-bit queries. Every result is canonical, i.e. bits at positions
``>= width`` are zero.
"""

from __future__ import annotations

from typing import Iterable

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1

ZEROS = "zeros"
ONES = "ones"


def _nwords(width: int) -> int:
    return (width + WORD_BITS - 1) // WORD_BITS


def _top_mask(width: int) -> int:
    r = width % WORD_BITS
    return WORD_MASK if r == 0 else (1 << r) - 1


class BitVec:
    """Immutable ``width``-bit vector; ``words[0]`` holds bits 0..63."""

    __slots__ = ("width", "words")

    def __init__(self, width: int, words: Iterable[int]):
        if width < 1:
            raise ValueError(f"bit vector width must be >= 1, got {width}")
        words = tuple(words)
        if len(words) != _nwords(width):
            raise ValueError(
                f"width {width} needs {_nwords(width)} words, got {len(words)}"
            )
        if any(not 0 <= x <= WORD_MASK for x in words):
            raise ValueError("word out of range")
        if words[-1] & ~_top_mask(width):
            raise ValueError("bits set above width")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "words", words)

    def __setattr__(self, name, value):
        raise AttributeError("BitVec is immutable")

    @classmethod
    def _trusted(cls, width: int, words: tuple) -> "BitVec":
        # skips validation; callers guarantee canonical words
        v = object.__new__(cls)
        object.__setattr__(v, "width", width)
        object.__setattr__(v, "words", words)
        return v

    @classmethod
    def from_int(cls, width: int, value: int) -> "BitVec":
        if value < 0 or value >> width:
            raise ValueError(f"value does not fit in {width} bits")
        if width <= WORD_BITS:
            return cls._trusted(width, (value,))
        return cls._trusted(
            width,
            tuple((value >> (k * WORD_BITS)) & WORD_MASK for k in range(_nwords(width))),
        )

    @classmethod
    def from_bits(cls, width: int, positions: Iterable[int]) -> "BitVec":
        value = 0
        for i in positions:
            if not 0 <= i < width:
                raise IndexError(f"bit {i} out of range for width {width}")
            value |= 1 << i
        return cls.from_int(width, value)

    def to_int(self) -> int:
        value = 0
        for k, word in enumerate(self.words):
            value |= word << (k * WORD_BITS)
        return value

    def bits(self) -> list[int]:
        """Ascending list of set bit positions (for debugging and tests)."""
        out = []
        for k, word in enumerate(self.words):
            base = k * WORD_BITS
            while word:
                low = word & -word
                out.append(base + low.bit_length() - 1)
                word ^= low
        return out

    @property
    def nwords(self) -> int:
        return len(self.words)

    def __eq__(self, other):
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.width == other.width and self.words == other.words

    def __hash__(self):
        return hash((self.width, self.words))

    def __repr__(self):
        return f"BitVec({self.width}, bits={self.bits()})"

    def __and__(self, other: "BitVec") -> "BitVec":
        return and_(self, other)

    def __or__(self, other: "BitVec") -> "BitVec":
        return or_(self, other)


def make(width: int, fill: str = ZEROS) -> BitVec:
    """All-zeros or all-ones vector of ``width`` bits."""
    if width < 1:
        raise ValueError(f"bit vector width must be >= 1, got {width}")
    n = _nwords(width)
    if fill == ZEROS:
        return BitVec(width, (0,) * n)
    if fill == ONES:
        return BitVec(width, (WORD_MASK,) * (n - 1) + (_top_mask(width),))
    raise ValueError(f"fill must be {ZEROS!r} or {ONES!r}, got {fill!r}")


def _shl1_words(words: tuple[int, ...], width: int, inject_low: bool) -> tuple[int, ...]:
    carry = 1 if inject_low else 0
    out = []
    for word in words:
        out.append(((word << 1) | carry) & WORD_MASK)
        carry = word >> (WORD_BITS - 1)
    out[-1] &= _top_mask(width)
    return tuple(out)


def shl1(v: BitVec, inject_low: bool = False) -> BitVec:
    """Shift every bit up one position; bit 0 becomes ``inject_low``."""
    if len(v.words) == 1:
        word = ((v.words[0] << 1) | (1 if inject_low else 0)) & _top_mask(v.width)
        return BitVec._trusted(v.width, (word,))
    return BitVec._trusted(v.width, _shl1_words(v.words, v.width, inject_low))


def _check_same_width(a: BitVec, b: BitVec) -> None:
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")


def and_(a: BitVec, b: BitVec) -> BitVec:
    _check_same_width(a, b)
    if len(a.words) == 1:
        return BitVec._trusted(a.width, (a.words[0] & b.words[0],))
    return BitVec._trusted(a.width, tuple(x & y for x, y in zip(a.words, b.words)))


def or_(a: BitVec, b: BitVec) -> BitVec:
    _check_same_width(a, b)
    if len(a.words) == 1:
        return BitVec._trusted(a.width, (a.words[0] | b.words[0],))
    return BitVec._trusted(a.width, tuple(x | y for x, y in zip(a.words, b.words)))


def _check_index(v: BitVec, i: int) -> None:
    if not 0 <= i < v.width:
        raise IndexError(f"bit {i} out of range for width {v.width}")


def set_bit(v: BitVec, i: int) -> BitVec:
    _check_index(v, i)
    k, r = divmod(i, WORD_BITS)
    words = list(v.words)
    words[k] |= 1 << r
    return BitVec._trusted(v.width, tuple(words))


def test_bit(v: BitVec, i: int) -> bool:
    _check_index(v, i)
    k, r = divmod(i, WORD_BITS)
    return bool((v.words[k] >> r) & 1)


def test_high(v: BitVec) -> bool:
    """True when bit ``width - 1`` is set."""
    return test_bit(v, v.width - 1)


def is_zero(v: BitVec) -> bool:
    return not any(v.words)

