import itertools
import random

import pytest

from randomgen import random_nfa, random_symbols
from tpmatch.cli import resolve
from tpmatch.formats import load_nfa
from tpmatch.untimed import (
    Nfa,
    NfaSkipTables,
    NoAcceptedWord,
    brute_force_nfa_match,
    build_nfa_beta,
    build_nfa_delta,
    build_nfa_tables,
    build_prefix_sets,
    fjs_nfa_match,
    shortest_lengths,
)


@pytest.fixture(scope="module")
def fig4():
    return load_nfa(resolve("fig4.nfa"))


def accepted_words(A: Nfa, max_len: int):
    """Every accepted word up to ``max_len`` by plain simulation."""
    alphabet = sorted(A.alphabet)
    for n in range(max_len + 1):
        for word in itertools.product(alphabet, repeat=n):
            current = frozenset(A.initial)
            for a in word:
                current = A.step(current, a)
            if current & A.accepting:
                yield word


def reaching_words(A: Nfa, s, max_len: int):
    alphabet = sorted(A.alphabet)
    for n in range(max_len + 1):
        for word in itertools.product(alphabet, repeat=n):
            current = frozenset(A.initial)
            for a in word:
                current = A.step(current, a)
            if s in current:
                yield word


def oracle_prefix_sets(A: Nfa):
    m, m_s = shortest_lengths(A)
    horizon = m + len(A.states)
    lp = {w[:m] for w in accepted_words(A, horizon) if len(w) >= m}
    lp_s = {}
    for s, ms in m_s.items():
        k = min(ms, m)
        lp_s[s] = {w[:k] for w in reaching_words(A, s, k + len(A.states)) if len(w) >= k}
    return m, lp, lp_s


def oracle_delta(m, lp, alphabet, a):
    # smallest n with Σ^n L' ∩ Σ^m a Σ* non-empty
    for n in range(1, m + 2):
        if n > m:
            return n
        if any(v[m - n] == a for v in lp):
            return n


def oracle_beta(m, lp, lp_s_words, alphabet):
    k = len(next(iter(lp_s_words)))
    for n in range(1, m + 1):
        # enumerate Σ^n · L' truncated to length n + m and test the L'_s prefix
        for head in itertools.product(alphabet, repeat=n):
            for v in lp:
                x = head + v
                if x[:k] in lp_s_words:
                    return n
    return m


class TestShortestLengths:
    def test_fig4(self, fig4):
        m, m_s = shortest_lengths(fig4)
        assert m == 4
        assert m_s["s4"] == 3
        assert m_s["s0"] == 0

    def test_one_step(self):
        A = Nfa.build([("s0", "a", "f")], ["s0"], ["f"])
        assert shortest_lengths(A)[0] == 1

    def test_empty_language(self):
        A = Nfa.build([("s0", "a", "s1")], ["s0"], ["f"])
        with pytest.raises(NoAcceptedWord):
            shortest_lengths(A)


class TestPrefixSets:
    def test_fig4_sets(self, fig4):
        ps = build_prefix_sets(fig4)
        words = {"".join(w) for w in ps.lp}
        assert words == {"abcd", "abcc", "cdcd", "cdcc"}
        assert {"".join(w) for w in ps.lp_s["s4"]} == {"abc", "cdc"}
        assert ps.lp_s["s0"] == frozenset({()})

    def test_random_against_enumeration(self):
        rng = random.Random(7)
        checked = 0
        while checked < 60:
            A = random_nfa(rng, max_states=4)
            m, lp, lp_s = oracle_prefix_sets(A)
            if m == 0 or m > 5:
                continue
            ps = build_prefix_sets(A)
            assert set(ps.lp) == lp
            for s, words in lp_s.items():
                assert set(ps.lp_s[s]) == words
            checked += 1


class TestSkipValues:
    def test_fig4_goldens(self, fig4):
        ps = build_prefix_sets(fig4)
        delta = build_nfa_delta(ps, fig4.alphabet | {"z"})
        beta = build_nfa_beta(ps)
        assert delta["b"] == 3
        assert delta["c"] == 1
        assert delta["z"] == 5
        assert beta["s4"] == 2
        assert beta["s0"] == 1

    def test_fig4_goldens_against_oracle(self, fig4):
        m, lp, lp_s = oracle_prefix_sets(fig4)
        alphabet = sorted(fig4.alphabet)
        assert oracle_delta(m, lp, alphabet, "b") == 3
        assert oracle_delta(m, lp, alphabet, "c") == 1
        assert oracle_delta(m, lp, alphabet, "z") == 5
        assert oracle_beta(m, lp, lp_s["s4"], alphabet) == 2

    def test_random_tables_against_oracle(self):
        rng = random.Random(11)
        checked = 0
        while checked < 60:
            A = random_nfa(rng, max_states=4)
            m, lp, lp_s = oracle_prefix_sets(A)
            if m == 0 or m > 4:
                continue
            alphabet = sorted(A.alphabet)
            tables = build_nfa_tables(A)
            for a in alphabet + ["z"]:
                assert tables.shift(a) == oracle_delta(m, lp, alphabet, a)
            for s, words in lp_s.items():
                expected = oracle_beta(m, lp, words, alphabet)
                assert tables.beta[s] == expected
                assert 1 <= tables.beta[s] <= m
            checked += 1


class TestMatching:
    def test_fig4_word(self, fig4):
        trace = []
        assert fjs_nfa_match("abdabccbabcd", fig4, trace=trace) == {(9, 12)}
        assert brute_force_nfa_match("abdabccbabcd", fig4) == {(9, 12)}
        assert all(x < y for x, y in zip(trace, trace[1:]))

    def test_empty_word(self, fig4):
        assert fjs_nfa_match("", fig4) == set()
        assert brute_force_nfa_match("", fig4) == set()

    def test_empty_word_accepted_only_nonempty_matches(self):
        A = Nfa.build([("s0", "a", "s0")], ["s0"], ["s0"])
        assert fjs_nfa_match("aa", A) == {(1, 1), (1, 2), (2, 2)}

    def test_reachable_sets_stay_empty(self, fig4):
        current = fig4.step(fig4.initial, "z")
        assert current == frozenset()
        assert fig4.step(current, "a") == frozenset()

    def test_random_against_brute_force(self):
        rng = random.Random(3)
        for _ in range(200):
            A = random_nfa(rng)
            w = random_symbols(rng)
            expected = brute_force_nfa_match(w, A)
            assert fjs_nfa_match(w, A) == expected
            assert fjs_nfa_match(w, A, NfaSkipTables.trivial()) == expected
