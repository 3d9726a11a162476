"""Seeded random instances shared by the property and acceptance tests."""

from __future__ import annotations

import random

from tpmatch.timed import TERMINAL, Atom, Guard, TimedAutomaton, Transition, validate_word
from tpmatch.untimed import Nfa, NoAcceptedWord, shortest_lengths
from tpmatch.zones import build_zone_automaton, timed_prefix_sets

OPS = ("<", "<=", ">", ">=")


def random_guard(rng: random.Random, clocks, max_const: int) -> Guard:
    if not clocks:
        return Guard()
    atoms = [
        Atom(rng.choice(clocks), rng.choice(OPS), rng.randint(0, max_const))
        for _ in range(rng.choice((0, 0, 1, 1, 2)))
    ]
    return Guard(tuple(atoms))


def random_pattern(
    rng: random.Random,
    *,
    max_clocks: int = 3,
    max_locations: int = 8,
    max_const: int = 5,
    alphabet: str = "abc",
) -> TimedAutomaton:
    """A pattern obeying the terminal-symbol rules with a non-empty language."""
    while True:
        clocks = [f"x{k}" for k in range(rng.randint(0, max_clocks))]
        nloc = rng.randint(2, max_locations)
        inner = [f"s{k}" for k in range(nloc - 1)]
        transitions = []
        for s in inner:
            for _ in range(rng.randint(1, 3)):
                resets = frozenset(x for x in clocks if rng.random() < 0.3)
                transitions.append(
                    Transition(s, rng.choice(inner), rng.choice(alphabet),
                               random_guard(rng, clocks, max_const), resets)
                )
        for s in rng.sample(inner, rng.randint(1, min(2, len(inner)))):
            transitions.append(Transition(s, "f", TERMINAL, random_guard(rng, clocks, max_const)))
        A = TimedAutomaton(
            locations=tuple(inner) + ("f",),
            initial=frozenset({"s0"}),
            accepting=frozenset({"f"}),
            clocks=tuple(clocks),
            transitions=tuple(transitions),
        )
        try:
            timed_prefix_sets(build_zone_automaton(A))
        except NoAcceptedWord:
            continue
        return A


def random_word(rng: random.Random, max_len: int = 60, alphabet: str = "abc"):
    """Half the time gaps are multiples of 1/4 so guard boundaries are hit exactly."""
    n = rng.randint(0, max_len)
    dyadic = rng.random() < 0.5
    now = 0.0
    events = []
    for _ in range(n):
        gap = rng.randint(1, 12) / 4 if dyadic else rng.uniform(0.05, 3.0)
        now += gap
        events.append((rng.choice(alphabet), now))
    return validate_word(events)


def random_nfa(rng: random.Random, *, max_states: int = 6, alphabet: str = "ab") -> Nfa:
    while True:
        states = list(range(rng.randint(1, max_states)))
        edges = []
        for s in states:
            for _ in range(rng.randint(0, 3)):
                edges.append((s, rng.choice(alphabet), rng.choice(states)))
        accepting = frozenset(rng.sample(states, rng.randint(1, max(1, len(states) // 2))))
        A = Nfa(frozenset(states), frozenset({0}), accepting, tuple(edges))
        try:
            shortest_lengths(A)
        except NoAcceptedWord:
            continue
        return A


def random_symbols(rng: random.Random, max_len: int = 100, alphabet: str = "ab"):
    return [rng.choice(alphabet) for _ in range(rng.randint(0, max_len))]


def sample_points(rng: random.Random, w, count: int, horizon: float = 6.0):
    """Random ``(t, t')`` pairs, a third of them pinned to event times so that
    interval boundaries are exercised."""
    times = list(w.times)
    end = (times[-1] if times else 0.0) + horizon
    out = []
    for _ in range(count):
        if times and rng.random() < 0.33:
            t = rng.choice([0.0, *times])
        else:
            t = rng.uniform(0.0, end)
        if times and rng.random() < 0.33:
            later = [x for x in times if x > t]
            tp = rng.choice(later) if later else t + rng.uniform(0.01, horizon)
        else:
            tp = t + rng.choice((rng.uniform(0.0, horizon), rng.uniform(0.0, end)))
        if tp > t:
            out.append((t, tp))
    return out
