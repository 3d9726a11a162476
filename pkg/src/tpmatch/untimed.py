"""FJS-type pattern matching against an NFA pattern."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

Symbol = Hashable
State = Hashable

DEFAULT_PREFIX_CAP = 1_000_000


class NoAcceptedWord(ValueError):
    """The pattern accepts nothing, so no skip tables exist."""


class PrefixExplosion(RuntimeError):
    """Prefix enumeration exceeded its cap."""


@dataclass(frozen=True)
class Nfa:
    states: frozenset
    initial: frozenset
    accepting: frozenset
    transitions: tuple[tuple[State, Symbol, State], ...]
    alphabet: frozenset = field(default=frozenset())

    def __post_init__(self):
        if not self.initial:
            raise ValueError("an NFA needs at least one initial state")
        states = set(self.states)
        for src, _, dst in self.transitions:
            states.update((src, dst))
        states.update(self.initial)
        states.update(self.accepting)
        object.__setattr__(self, "states", frozenset(states))
        labels = {a for _, a, _ in self.transitions}
        object.__setattr__(self, "alphabet", frozenset(self.alphabet) | frozenset(labels))
        delta: dict[tuple[State, Symbol], list[State]] = {}
        for src, a, dst in self.transitions:
            delta.setdefault((src, a), []).append(dst)
        object.__setattr__(self, "_delta", {k: tuple(v) for k, v in delta.items()})

    @classmethod
    def build(
        cls,
        transitions: Iterable[tuple[State, Symbol, State]],
        initial: Iterable[State],
        accepting: Iterable[State],
    ) -> Nfa:
        return cls(frozenset(), frozenset(initial), frozenset(accepting), tuple(transitions))

    def step(self, current: Iterable[State], symbol: Symbol) -> frozenset:
        delta = self._delta
        out: set = set()
        for s in current:
            out.update(delta.get((s, symbol), ()))
        return frozenset(out)

    def successors(self, s: State) -> Iterable[tuple[Symbol, State]]:
        for src, a, dst in self.transitions:
            if src == s:
                yield a, dst

    def coreachable(self, targets: Iterable[State]) -> frozenset:
        """States from which some state in ``targets`` is reachable."""
        preds: dict[State, list[State]] = {}
        for src, _, dst in self.transitions:
            preds.setdefault(dst, []).append(src)
        seen = set(targets)
        todo = deque(seen)
        while todo:
            s = todo.popleft()
            for p in preds.get(s, ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)


def shortest_lengths(A: Nfa) -> tuple[int, dict[State, int]]:
    """``(m, m_s)``: shortest accepted length and shortest length reaching each state."""
    dist = {s: 0 for s in A.initial}
    todo = deque(A.initial)
    while todo:
        s = todo.popleft()
        for _, t in A.successors(s):
            if t not in dist:
                dist[t] = dist[s] + 1
                todo.append(t)
    finals = [dist[s] for s in A.accepting if s in dist]
    if not finals:
        raise NoAcceptedWord("no accepting state is reachable")
    return min(finals), dist


@dataclass(frozen=True)
class PrefixSets:
    m: int
    m_s: dict
    lp: frozenset  # tuples of symbols, each of length m
    lp_s: dict  # state -> frozenset of tuples of length min(m_s, m)


def _prefixes(A: Nfa, length: int, goal: frozenset, cap: int) -> frozenset:
    """Words of ``length`` read from the initial states into a set meeting ``goal``."""
    out: set[tuple] = set()
    alphabet = sorted(A.alphabet, key=repr)

    def walk(current: frozenset, word: tuple):
        if len(word) == length:
            if current & goal:
                out.add(word)
                if len(out) > cap:
                    raise PrefixExplosion(f"more than {cap} prefixes")
            return
        for a in alphabet:
            nxt = A.step(current, a) & goal
            if nxt:
                walk(nxt, word + (a,))

    start = frozenset(A.initial) & goal
    if start:
        walk(start, ())
    return frozenset(out)


def build_prefix_sets(A: Nfa, *, cap: int = DEFAULT_PREFIX_CAP) -> PrefixSets:
    m, m_s = shortest_lengths(A)
    lp = _prefixes(A, m, A.coreachable(A.accepting), cap)
    lp_s = {}
    for s, ms in m_s.items():
        lp_s[s] = _prefixes(A, min(ms, m), A.coreachable([s]), cap)
    return PrefixSets(m, dict(m_s), lp, lp_s)


def build_nfa_delta(ps: PrefixSets, alphabet: Iterable[Symbol] = ()) -> dict[Symbol, int]:
    """Smallest shift bringing an occurrence of each symbol under window position ``m+1``."""
    m = ps.m
    delta = {a: m + 1 for a in alphabet}
    for n in range(m, 0, -1):
        for word in ps.lp:
            delta[word[m - n]] = min(delta.get(word[m - n], m + 1), n)
    return delta


def build_nfa_beta(ps: PrefixSets) -> dict[State, int]:
    beta = {}
    for s, words in ps.lp_s.items():
        k = len(next(iter(words))) if words else 0
        n = 1
        while n < k:
            suffixes = {u[n:] for u in words}
            heads = {v[: k - n] for v in ps.lp}
            if suffixes & heads:
                break
            n += 1
        beta[s] = max(1, n)
    return beta


@dataclass(frozen=True)
class NfaSkipTables:
    m: int
    delta: dict
    beta: dict
    tail: frozenset  # symbols ending some word of L'

    def shift(self, symbol: Symbol) -> int:
        return self.delta.get(symbol, self.m + 1)

    @classmethod
    def trivial(cls) -> NfaSkipTables:
        """Tables that make the matcher try every start position; always sound."""
        return cls(0, {}, {}, frozenset())


def build_nfa_tables(A: Nfa, *, cap: int = DEFAULT_PREFIX_CAP) -> NfaSkipTables:
    m, _ = shortest_lengths(A)
    if m == 0:
        # the empty word is accepted; only non-empty matches are reported and
        # the window machinery has nothing to look at
        return NfaSkipTables.trivial()
    try:
        ps = build_prefix_sets(A, cap=cap)
    except PrefixExplosion:
        return NfaSkipTables.trivial()
    return NfaSkipTables(
        m,
        build_nfa_delta(ps, A.alphabet),
        build_nfa_beta(ps),
        frozenset(word[-1] for word in ps.lp),
    )


def _trial(A: Nfa, w: Sequence[Symbol], n: int, found: set) -> frozenset:
    """Feed ``w(n..)`` to ``A``; return the last non-empty state set."""
    current = frozenset(A.initial)
    last = current
    for j in range(n, len(w) + 1):
        current = A.step(current, w[j - 1])
        if not current:
            break
        last = current
        if current & A.accepting:
            found.add((n, j))
    return last


def fjs_nfa_match(
    w: Sequence[Symbol],
    A: Nfa,
    tables: NfaSkipTables | None = None,
    *,
    trace: list[int] | None = None,
) -> set[tuple[int, int]]:
    """All non-empty ``(i, j)`` with ``w(i..j)`` accepted by ``A``."""
    if tables is None:
        try:
            tables = build_nfa_tables(A)
        except NoAcceptedWord:
            return set()
    m = tables.m
    found: set[tuple[int, int]] = set()
    if m == 0:
        for n in range(1, len(w) + 1):
            if trace is not None:
                trace.append(n)
            _trial(A, w, n, found)
        return found
    limit = len(w) - m + 1
    n = 1
    while n <= limit:
        if trace is not None:
            trace.append(n)
        while w[n + m - 2] not in tables.tail:
            if n + m - 1 >= len(w):
                return found
            n += tables.shift(w[n + m - 1])
            if n > limit:
                return found
            if trace is not None:
                trace.append(n)
        stuck = _trial(A, w, n, found)
        n += max(tables.beta.get(s, 1) for s in stuck)
    return found


def brute_force_nfa_match(w: Sequence[Symbol], A: Nfa) -> set[tuple[int, int]]:
    found: set[tuple[int, int]] = set()
    for n in range(1, len(w) + 1):
        _trial(A, w, n, found)
    return found
