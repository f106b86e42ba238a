import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rlematch import matchers as M
from rlematch.rle import RunSeq, runs_of
from rlematch.tables import EmptyPatternError, build_prefix_tables, build_suffix_tables

P, TXT = b"cttcct", b"cttccttcct"


@st.composite
def text_and_pattern(draw, max_text=120, sigmas=(2, 3, 4)):
    sigma = draw(st.sampled_from(sigmas))
    alphabet = b"abcdefghijklmnop"[:sigma]
    pieces = draw(st.lists(st.tuples(st.sampled_from(alphabet), st.integers(1, 6)), max_size=max_text // 3))
    text = b"".join(bytes([c]) * l for c, l in pieces)
    if text and draw(st.booleans()):
        i = draw(st.integers(0, len(text) - 1))
        j = draw(st.integers(i + 1, len(text)))
        pattern = text[i:j]
    else:
        pattern = draw(st.lists(st.sampled_from(alphabet), min_size=1, max_size=12).map(bytes))
    return text, pattern


# --- worked examples


def test_rl_shift_and_example_trace():
    t = build_prefix_tables(P)
    configs = [sorted(i + 1 for i in d.bits()) for d in M.rl_shift_and_configs(t, runs_of(TXT))]
    assert configs == [[1], [2], [1, 3], [2, 4], [1, 3], [4]]


def test_rl_shift_and_example_matches(backend):
    assert M.rl_shift_and(build_prefix_tables(P), TXT, backend=backend) == [0, 4]
    assert M.rl_shift_and(build_prefix_tables(P), list(runs_of(TXT)), backend=backend) == [0, 4]
    assert M.rl_shift_and(build_prefix_tables(b"ab"), b"bbbb", backend=backend) == []
    assert M.rl_shift_and(build_prefix_tables(b"ab"), b"", backend=backend) == []


def test_rl_bndm_examples(backend):
    assert M.rl_bndm(build_prefix_tables(P[::-1]), TXT, backend=backend) == [0, 4]
    assert M.rl_bndm(build_prefix_tables(b"ba"), b"ab", backend=backend) == [0]
    assert M.rl_bndm(build_prefix_tables(P[::-1]), b"cttcc", backend=backend) == []


def test_rl_bndm_example_trace_steps():
    # first window reads 4 runs (t,2)(c,2)(t,2)(c,1); second reads 4 runs
    stats = M.SearchStats()
    kern = M.get_backend("python")
    t = build_prefix_tables(P[::-1])
    b1, b2 = t.int_rows
    starts, steps = kern.rl_bndm(b1, b2, t.rho, t.m, t.ell, TXT)
    assert starts == [0, 4]
    assert steps == 8
    M.rl_bndm(t, TXT, backend="python", stats=stats)
    assert stats.transitions == 8


@pytest.mark.parametrize("fn", [M.classic_shift_and, M.classic_bndm])
def test_classic_examples(fn, backend):
    assert fn(P, TXT, backend=backend) == [0, 4]
    assert fn(b"a", b"aaa", backend=backend) == [0, 1, 2]
    assert fn(b"abcd", b"abc", backend=backend) == []


def test_naive_examples():
    assert M.naive_search(b"aa", b"aaa") == [0, 1]
    assert M.naive_search(P, TXT) == [0, 4]
    assert M.naive_search(P, P) == [0]
    with pytest.raises(EmptyPatternError):
        M.naive_search(b"", b"abc")


def test_single_symbol_examples():
    assert M.single_symbol_match(ord("a"), 2, b"aaab") == [0, 1]
    assert M.single_symbol_match(ord("a"), 2, b"ab") == []
    expected = oracles.occurrences(b"aaa", b"aabaaaab")
    assert expected == [3, 4]
    assert M.single_symbol_match(ord("a"), 3, b"aabaaaab") == expected
    assert M.single_symbol_match(ord("a"), 3, list(runs_of(b"aabaaaab"))) == expected


def test_suffix_prefix_examples():
    s = build_suffix_tables(P)
    assert M.suffix_prefix_lengths(s, b"cct") == {3}
    assert M.suffix_prefix_lengths(s, b"tt") == {1}
    assert M.suffix_prefix_lengths(s, b"xct") == set()
    assert oracles.suffix_prefix_lengths(P, b"cct") == {3}
    assert oracles.suffix_prefix_lengths(P, b"tt") == {1}
    with pytest.raises(ValueError):
        M.suffix_prefix_lengths(s, b"")


# --- dispatcher


def test_dispatch_single_symbol():
    stats = M.SearchStats()
    assert M.search(b"aaaa", b"aaaaab", stats=stats) == [0, 1]
    assert stats.algorithm == "single-symbol"


def test_dispatch_stream_uses_rl_shift_and():
    stats = M.SearchStats()
    assert M.search(P, runs_of(TXT), stats=stats) == [0, 4]
    assert stats.algorithm == "rl-shift-and"


def test_dispatch_raw_uses_rl_bndm_then_bndm():
    stats = M.SearchStats()
    M.search(P, TXT, stats=stats)
    assert stats.algorithm == "rl-bndm"
    long_pattern = b"ab" * 40  # 80 runs, more than one word
    stats = M.SearchStats()
    text = b"x" + long_pattern * 2
    assert M.search(long_pattern, text, stats=stats) == oracles.occurrences(long_pattern, text)
    assert stats.algorithm == "bndm"


@pytest.mark.parametrize("algo", sorted(M.RANDOM_ACCESS_ALGORITHMS))
def test_dispatch_rejects_stream_for_random_access(algo):
    with pytest.raises(M.IncompatibleSourceError):
        M.search(P, runs_of(TXT), algo)


def test_dispatch_errors():
    with pytest.raises(EmptyPatternError):
        M.search(b"", TXT)
    with pytest.raises(ValueError):
        M.search(P, TXT, "kmp")
    with pytest.raises(ValueError):
        M.search(P, TXT, backend="fortran")


def test_search_accepts_bytearray_and_memoryview(backend):
    for src in (bytearray(TXT), memoryview(TXT)):
        for algo in M.ALGORITHMS:
            assert M.search(P, src, algo, backend=backend) == [0, 4]


# --- properties


@given(text_and_pattern())
def test_all_matchers_agree_with_oracle(case):
    text, pattern = case
    expected = oracles.occurrences(pattern, text)
    for backend in M.BACKENDS:
        for algo in M.ALGORITHMS:
            assert M.search(pattern, text, algo, backend=backend) == expected
        assert M.search(pattern, list(runs_of(text)), backend=backend) == expected


@given(text_and_pattern())
def test_run_boundary_configs_match_nfa(case):
    """Encoded configs equal the NFA restricted to run-start states, and
    states off the run starts are dead at every text run boundary."""
    text, pattern = case
    if len(RunSeq.from_bytes(pattern)) < 2:
        return
    m = len(pattern)
    p_starts = oracles.run_starts(pattern)
    i_p = set(p_starts)
    full = oracles.prefix_nfa_configs(pattern, text, final_loop=True)
    t_starts = oracles.run_starts(text)
    tables = build_prefix_tables(pattern)
    configs = list(M.rl_shift_and_configs(tables, runs_of(text)))
    assert len(configs) == len(t_starts) - 1
    for j, d in enumerate(configs, start=1):
        pos = t_starts[j]
        expected = {i - 1 for i in range(1, len(p_starts)) if p_starts[i] in full[pos]}
        assert set(d.bits()) == expected
    plain = oracles.prefix_nfa_configs(pattern, text, final_loop=False)
    for pos in t_starts[1:-1]:
        for q in plain[pos]:
            if q not in i_p:
                assert oracles.prefix_transition(pattern, q, text[pos]) == set()
    assert m == p_starts[-1]


@given(text_and_pattern())
def test_bitwise_step_equals_set_formula(case):
    text, pattern = case
    r = oracles.runs(pattern)
    rho = len(r)
    if rho < 2:
        return
    tables = build_prefix_tables(pattern)
    prev: set[int] = set()
    for (c, l), d in zip(oracles.runs(text), M.rl_shift_and_configs(tables, runs_of(text))):
        nxt = {i + 1 for i in prev | {0}}
        nxt &= {i for i in range(1, rho + 1) if c == r[i - 1][0]}
        lens = {i for i in range(2, rho) if l == r[i - 1][1]}
        lens |= {i for i in (1, rho) if l >= r[i - 1][1]}
        nxt &= lens
        assert {i + 1 for i in d.bits()} == nxt
        prev = nxt


@given(text_and_pattern())
def test_at_most_one_occurrence_end_per_text_run(case):
    text, pattern = case
    if len(RunSeq.from_bytes(pattern)) < 2:
        return
    ends = {s + len(pattern) - 1 for s in oracles.occurrences(pattern, text)}
    starts = oracles.run_starts(text)
    for a, b in zip(starts, starts[1:]):
        assert len([e for e in ends if a <= e < b]) <= 1


@given(text_and_pattern())
def test_transition_counts(case):
    text, pattern = case
    if len(RunSeq.from_bytes(pattern)) < 2:
        return
    for backend in M.BACKENDS:
        stats = M.SearchStats()
        M.rl_shift_and(build_prefix_tables(pattern), text, backend=backend, stats=stats)
        assert stats.transitions == len(oracles.runs(text))
        stats = M.SearchStats()
        M.classic_shift_and(pattern, text, backend=backend, stats=stats)
        assert stats.transitions == len(text)


@given(st.data())
def test_suffix_prefix_lengths_brute_force(data):
    sigma = data.draw(st.sampled_from([2, 3, 4]))
    alphabet = b"abcd"[:sigma]
    pattern = data.draw(st.lists(st.sampled_from(alphabet), min_size=2, max_size=30).map(bytes))
    if len(set(pattern)) < 2:
        return
    if data.draw(st.booleans()):
        k = data.draw(st.integers(0, len(pattern) - 1))
        tail = data.draw(st.lists(st.sampled_from(alphabet), max_size=5).map(bytes))
        s = pattern[k:] + tail
    else:
        s = data.draw(st.lists(st.sampled_from(alphabet), min_size=1, max_size=30).map(bytes))
    got = M.suffix_prefix_lengths(build_suffix_tables(pattern), s)
    assert got == oracles.suffix_prefix_lengths(pattern, s)


def test_rl_bndm_no_double_reports_on_long_runs():
    rng = random.Random(11)
    kern = M.get_backend("python")
    for _ in range(300):
        text = b"".join(bytes([rng.choice(b"ab")]) * rng.randint(1, 40) for _ in range(rng.randint(1, 60)))
        i = rng.randrange(len(text))
        pattern = text[i:i + rng.randint(2, 50)]
        if len(set(pattern)) < 2:
            continue
        t = build_prefix_tables(pattern[::-1])
        b1, b2 = t.int_rows
        raw, _ = kern.rl_bndm(b1, b2, t.rho, t.m, t.ell, text)
        assert raw == sorted(set(raw))
        assert raw == oracles.occurrences(pattern, text)
