"""Timed words, guards and timed automata with a terminal ``$`` symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .dbm import GE, GT, LE, LT, OPERATORS

TERMINAL = "$"


class TimedModelError(ValueError):
    """Base class for malformed words and automata."""


class NonMonotoneTimestamp(TimedModelError):
    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"timestamp of event {index} is not strictly increasing")


class NonPositiveTimestamp(TimedModelError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"timestamp of event {index} must be positive")


class ReservedLabel(TimedModelError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"event {index} uses the reserved label {TERMINAL!r}")


class InvalidInterval(TimedModelError):
    pass


class AssumptionViolation(TimedModelError):
    pass


@dataclass(frozen=True, slots=True)
class TimedWord:
    """A validated timed word.  Use :func:`validate_word` to build one."""

    labels: tuple[str, ...]
    times: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return zip(self.labels, self.times)

    @property
    def events(self) -> list[tuple[str, float]]:
        return list(zip(self.labels, self.times))


def validate_word(
    events: Iterable[tuple[str, float]], *, allow_terminal: bool = False
) -> TimedWord:
    """Check positivity and strict monotonicity; indices in errors are 1-based."""
    labels: list[str] = []
    times: list[float] = []
    prev = 0.0
    for k, (label, tau) in enumerate(events, start=1):
        tau = float(tau)
        if not allow_terminal and label == TERMINAL:
            raise ReservedLabel(k)
        if not tau > 0 or math.isnan(tau):
            raise NonPositiveTimestamp(k)
        if k > 1 and not tau > prev:
            raise NonMonotoneTimestamp(k)
        labels.append(label)
        times.append(tau)
        prev = tau
    return TimedWord(tuple(labels), tuple(times))


def segment(w: TimedWord, t: float, t2: float) -> TimedWord:
    """Events strictly inside ``(t, t2)`` shifted by ``-t``, then ``($, t2 - t)``."""
    if not 0 <= t < t2:
        raise InvalidInterval(f"need 0 <= t < t', got t={t}, t'={t2}")
    labels = []
    times = []
    for label, tau in w:
        if t < tau < t2:
            labels.append(label)
            times.append(tau - t)
    labels.append(TERMINAL)
    times.append(t2 - t)
    return TimedWord(tuple(labels), tuple(times))


def holds(op: str, value: float, c: int) -> bool:
    if op == LT:
        return value < c
    if op == LE:
        return value <= c
    if op == GT:
        return value > c
    if op == GE:
        return value >= c
    raise ValueError(f"unknown operator {op!r}")


@dataclass(frozen=True, slots=True)
class Atom:
    clock: str
    op: str
    bound: int

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise TimedModelError(f"unknown operator {self.op!r}")
        if not isinstance(self.bound, int) or self.bound < 0:
            raise TimedModelError(f"guard constants must be non-negative integers: {self.bound!r}")

    def __str__(self) -> str:
        return f"{self.clock} {self.op} {self.bound}"


@dataclass(frozen=True, slots=True)
class Guard:
    atoms: tuple[Atom, ...] = ()

    def __str__(self) -> str:
        return " & ".join(map(str, self.atoms)) if self.atoms else "true"

    def satisfied(self, valuation: Mapping[str, float]) -> bool:
        return all(holds(a.op, valuation[a.clock], a.bound) for a in self.atoms)


TRUE = Guard()


@dataclass(frozen=True, slots=True)
class Transition:
    source: str
    target: str
    label: str
    guard: Guard = TRUE
    resets: frozenset[str] = frozenset()

    def __str__(self) -> str:
        resets = "{" + ",".join(sorted(self.resets)) + "}" if self.resets else ""
        guard = f" [{self.guard}]" if self.guard.atoms else ""
        return f"{self.source} -> {self.target} {self.label}{guard}{(' ' + resets) if resets else ''}"


@dataclass(frozen=True)
class TimedAutomaton:
    """A pattern automaton.  Construction validates the terminal-symbol rules."""

    locations: tuple[str, ...]
    initial: frozenset[str]
    accepting: frozenset[str]
    clocks: tuple[str, ...]
    transitions: tuple[Transition, ...]
    alphabet: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        locs = set(self.locations)
        if len(locs) != len(self.locations):
            raise TimedModelError("duplicate location names")
        if not self.initial:
            raise TimedModelError("at least one initial location is required")
        for name in (*self.initial, *self.accepting):
            if name not in locs:
                raise TimedModelError(f"unknown location {name!r}")
        if len(set(self.clocks)) != len(self.clocks):
            raise TimedModelError("duplicate clock names")
        clocks = set(self.clocks)
        labels = set()
        for k, tr in enumerate(self.transitions):
            where = f"transition {k + 1} ({tr})"
            if tr.source not in locs or tr.target not in locs:
                raise TimedModelError(f"{where}: unknown location")
            for atom in tr.guard.atoms:
                if atom.clock not in clocks:
                    raise TimedModelError(f"{where}: unknown clock {atom.clock!r}")
            for x in tr.resets:
                if x not in clocks:
                    raise TimedModelError(f"{where}: unknown clock {x!r}")
            if tr.source in self.accepting:
                raise AssumptionViolation(f"{where}: leaves an accepting location")
            if tr.target in self.accepting and tr.label != TERMINAL:
                raise AssumptionViolation(f"{where}: enters an accepting location without {TERMINAL!r}")
            if tr.label == TERMINAL and tr.target not in self.accepting:
                raise AssumptionViolation(f"{where}: {TERMINAL!r} edge must enter an accepting location")
            if tr.label != TERMINAL:
                labels.add(tr.label)
        object.__setattr__(self, "alphabet", frozenset(self.alphabet) | frozenset(labels))

    @property
    def max_constant(self) -> int:
        return max((a.bound for tr in self.transitions for a in tr.guard.atoms), default=0)

    def clock_index(self) -> dict[str, int]:
        return {x: k for k, x in enumerate(self.clocks)}


def eval_clocks(
    rho: Mapping[str, float], t: float, t0: float, clocks: Sequence[str]
) -> dict[str, float]:
    """Valuation at absolute time ``t`` for a trial whose origin is ``t0``."""
    return {x: t - rho[x] if x in rho else t - t0 for x in clocks}


def reset_record(rho: Mapping[str, float], x: str, t_reset: float) -> dict[str, float]:
    out = dict(rho)
    out[x] = t_reset
    return out


def accepts(A: TimedAutomaton, u: TimedWord) -> bool:
    """Exact forward simulation of ``A`` on a concrete word over the alphabet plus ``$``.

    Configurations store the absolute reset time of every clock, so clock values
    are a single subtraction and never accumulate rounding.
    """
    clocks = A.clocks
    by_source: dict[str, list[Transition]] = {}
    for tr in A.transitions:
        by_source.setdefault(tr.source, []).append(tr)
    configs = {(s, (0.0,) * len(clocks)) for s in A.initial}
    for label, tau in u:
        nxt = set()
        for s, resets in configs:
            for tr in by_source.get(s, ()):
                if tr.label != label:
                    continue
                val = {x: tau - r for x, r in zip(clocks, resets)}
                if not tr.guard.satisfied(val):
                    continue
                new = tuple(tau if x in tr.resets else r for x, r in zip(clocks, resets))
                nxt.add((tr.target, new))
        configs = nxt
        if not configs:
            return False
    return any(s in A.accepting for s, _ in configs)
