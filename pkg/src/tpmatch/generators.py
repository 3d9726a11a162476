"""Synthetic timed words for benchmarks and tests."""

from __future__ import annotations

import heapq
import random

PROFILES = ("simple-alternation", "exp-superposition")


def _stamp(x: float) -> float:
    return round(x, 6)


def simple_alternation(length: int, seed: int | None = 0) -> list[tuple[str, float]]:
    """``a, b, a, b, ...`` with independent uniform gaps in ``[0.01, 1]``."""
    rng = random.Random(seed)
    now = 0.0
    events = []
    for k in range(length):
        now = _stamp(now + rng.uniform(0.01, 1.0))
        events.append(("a" if k % 2 == 0 else "b", now))
    return events


def exp_superposition(
    length: int, seed: int | None = 0, rate: float = 1.0
) -> list[tuple[str, float]]:
    """Two independent on/off signals ``p`` and ``q`` whose phases last
    exponentially distributed times; events are the edges ``p``, ``np``,
    ``q``, ``nq`` merged by time."""
    rng = random.Random(seed)
    heap = [(_stamp(rng.expovariate(rate)) or 1e-6, name, 0) for name in ("p", "q")]
    heapq.heapify(heap)
    events: list[tuple[str, float]] = []
    last = 0.0
    while len(events) < length:
        when, name, phase = heapq.heappop(heap)
        when = max(when, _stamp(last + 1e-6))
        events.append((name if phase == 0 else "n" + name, when))
        last = when
        heapq.heappush(heap, (_stamp(when + rng.expovariate(rate)), name, 1 - phase))
    return events


def generate(profile: str, length: int, seed: int | None = 0, rate: float = 1.0):
    if length < 0:
        raise ValueError("length must be non-negative")
    if profile == "simple-alternation":
        return simple_alternation(length, seed)
    if profile == "exp-superposition":
        return exp_superposition(length, seed, rate)
    raise ValueError(f"unknown profile {profile!r}")
