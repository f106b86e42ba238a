import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rlematch.tables import (
    EmptyPatternError,
    SingleRunPatternError,
    build_classic_table,
    build_prefix_tables,
    build_suffix_tables,
)

C, T = ord("c"), ord("t")


def bits(v):
    return set(v.bits())


@st.composite
def multi_run_pattern(draw, max_size=300):
    sigma = draw(st.sampled_from([2, 4, 8]))
    alphabet = b"abcdefgh"[:sigma]
    p = draw(st.lists(st.sampled_from(alphabet), min_size=2, max_size=max_size).map(bytes))
    if len(set(p)) < 2:
        p = p[:-1] + bytes([alphabet[0] if p[-1] != alphabet[0] else alphabet[1]])
    return p


def test_prefix_tables_example():
    t = build_prefix_tables(b"cttcct")
    assert bits(t.b1[C]) == {0, 2}
    assert bits(t.b1[T]) == {1, 3}
    assert bits(t.b2[1]) == {0, 3}
    assert bits(t.b2[2]) == {0, 1, 2, 3}
    for l in range(3, 8):
        assert bits(t.b2[l]) == {0, 3}
    assert (t.rho, t.ell, t.m) == (4, 1, 6)
    assert bits(t.b1[ord("x")]) == set()


def test_len_row_clamps():
    t = build_prefix_tables(b"cttcct")
    assert t.len_row(10**9) == t.b2[7]


def test_suffix_tables_example_pattern():
    s = build_suffix_tables(b"cttcct")
    assert bits(s.b3[1]) == {0, 1, 2, 3}
    assert bits(s.b3[2]) == {1, 2, 3}
    for l in range(3, 8):
        assert bits(s.b3[l]) == {3}
    # no loop on the initial state: run 1 needs an exact length
    assert bits(s.b2s[1]) == {0, 3}
    assert bits(s.b2s[2]) == {1, 2, 3}
    assert bits(s.b2s[3]) == {3}
    assert s.ell == 1


def test_ell_is_last_run_length():
    assert build_prefix_tables(b"aaabbbbbcc").ell == 2
    assert build_prefix_tables(b"aaab").ell == 1


@pytest.mark.parametrize("build", [build_prefix_tables, build_suffix_tables])
def test_rejects_bad_patterns(build):
    with pytest.raises(EmptyPatternError):
        build(b"")
    with pytest.raises(SingleRunPatternError):
        build(b"aaaa")


def test_classic_table():
    t = build_classic_table(b"abca")
    assert bits(t.b[ord("a")]) == {0, 3}
    assert t.int_rows[ord("c")] == 0b100
    with pytest.raises(EmptyPatternError):
        build_classic_table(b"")


@given(multi_run_pattern())
def test_prefix_rows_match_definitions(p):
    t = build_prefix_tables(p)
    m = len(p)
    assert t.rho == len(oracles.runs(p))
    for c in set(p) | {0}:
        assert bits(t.b1[c]) == oracles.b1_bits(p, c)
    for l in range(1, m + 2):
        assert bits(t.b2[l]) == oracles.b2_bits(p, l)


@given(multi_run_pattern())
def test_suffix_rows_match_definitions(p):
    s = build_suffix_tables(p)
    for l in range(1, len(p) + 2):
        assert bits(s.b2s[l]) == oracles.b2s_bits(p, l)
        assert bits(s.b3[l]) == oracles.b3_bits(p, l)
        assert s.rho - 1 in bits(s.b3[l])


@given(multi_run_pattern(), st.integers(1, 10**6))
def test_clamp_soundness(p, l):
    t = build_prefix_tables(p)
    s = build_suffix_tables(p)
    m = len(p)
    if l > m:
        assert t.len_row(l) == t.b2[m + 1]
        assert s.first_row(l) == s.b3[m + 1]
        assert bits(s.b3[m + 1]) == {s.rho - 1}
        assert bits(t.b2[m + 1]) == {0, t.rho - 1}


@given(multi_run_pattern())
def test_prefix_and_suffix_length_rows_differ_only_at_first_run(p):
    t = build_prefix_tables(p)
    s = build_suffix_tables(p)
    first_len = oracles.runs(p)[0][1]
    for l in range(1, len(p) + 2):
        diff = bits(t.b2[l]) ^ bits(s.b2s[l])
        # b2 admits run 0 for any l >= its length; b2s only for equality
        assert diff == ({0} if l > first_len else set())
        assert bits(s.b2s[l]) <= bits(t.b2[l])


def test_word_rows_layout():
    rng = random.Random(3)
    p = bytes(rng.choice(b"abcdefghijklmnop") for _ in range(300))
    t = build_prefix_tables(p)
    b1, b2 = t.word_rows
    assert b1.shape == (256, t.nwords) and b2.shape == (len(p) + 2, t.nwords)
    for c in set(p):
        value = sum(int(w) << (64 * k) for k, w in enumerate(b1[c]))
        assert value == t.b1[c].to_int()
    assert t.footprint_bytes() == (256 + len(p) + 2) * t.nwords * 8
