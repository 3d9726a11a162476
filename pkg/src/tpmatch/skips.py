"""Quick-search (Δ) and KMP-style (β) skip tables for timed patterns.

β is decided by bounded exploration of a product of two pattern copies that
share one DBM over the clocks ``C ⊎ C'``.  Copy 1 replays a run prefix that
reaches the queried location; copy 2 replays a run prefix of an accepting run
whose time origin lies between the ``n``-th and ``(n+1)``-th event of copy 1.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .dbm import Dbm
from .timed import TERMINAL, TimedAutomaton
from .zones import (
    ZoneAutomaton,
    TimedPrefixSets,
    build_zone_automaton,
    compile_transitions,
    timed_prefix_sets,
)

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class TimedSkipTables:
    m: int
    delta: dict[str, int]
    beta: dict[str, int]
    tail: frozenset[str] | None  # None disables the tail test

    def shift(self, label: str) -> int:
        return self.delta.get(label, self.m)

    def kmp(self, locations: Iterable[str]) -> int:
        return max((self.beta.get(s, 1) for s in locations), default=1)

    @classmethod
    def ones(cls, m: int) -> TimedSkipTables:
        """Degenerate tables: every start position gets a full trial."""
        return cls(m, {}, {}, None)


def compute_delta(tps: TimedPrefixSets, alphabet: Iterable[str]) -> dict[str, int]:
    m = tps.m
    delta = {a: m for a in alphabet}
    for n in range(m - 1, 0, -1):
        for a in tps.edge_labels[m - n - 1]:
            delta[a] = min(delta.get(a, m), n)
    return delta


class BudgetExceeded(RuntimeError):
    pass


class ProductExplorationCache:
    """Insert-only memo of product successors, shared by all β queries.

    Reads are lock-free; inserts take the lock and never overwrite.
    """

    def __init__(self):
        self._succ: dict = {}
        self._finish: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._succ) + len(self._finish)

    def _get(self, table: dict, key):
        value = table.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def _put(self, table: dict, key, value):
        with self._lock:
            return table.setdefault(key, value)


class _Product:
    def __init__(
        self,
        Z: ZoneAutomaton,
        tps: TimedPrefixSets,
        cache: ProductExplorationCache | None,
        budget: int,
    ):
        A = Z.automaton
        self.Z = Z
        self.tps = tps
        self.nclocks = len(A.clocks)
        self.copy1 = tuple(range(self.nclocks))
        self.copy2 = tuple(range(self.nclocks, 2 * self.nclocks))
        self.trans = compile_transitions(A)
        self.shifted_guard = [
            tuple((x + self.nclocks, op, c) for x, op, c in tr.guard) for tr in self.trans
        ]
        self.shifted_resets = [tuple(x + self.nclocks for x in tr.resets) for tr in self.trans]
        self.bound_max = Z.max_constant
        self.good = tps.coreach_accepting
        self.cache = cache
        self.budget = budget
        start = Dbm.zero(2 * self.nclocks).free(self.copy2)
        self.start = start

    def successors(self, a, b, zone: Dbm) -> tuple:
        """One synchronised event; ``None`` marks an inactive copy."""
        key = (a, b, zone)
        if self.cache is not None:
            hit = self.cache._get(self.cache._succ, key)
            if hit is not None:
                return hit
        out = []
        Z = self.Z
        elapsed = zone.elapse()
        edges1 = [e for e in Z.out[a] if e.label != TERMINAL] if a is not None else [None]
        edges2 = (
            [e for e in Z.out[b] if e.label != TERMINAL and e.target in self.good]
            if b is not None
            else [None]
        )
        for e1 in edges1:
            z1 = elapsed.and_guard(self.trans[e1.transition].guard) if e1 is not None else elapsed
            if z1.is_empty():
                continue
            for e2 in edges2:
                if e1 is not None and e2 is not None and e1.label != e2.label:
                    continue
                z2 = z1
                if e2 is not None:
                    z2 = z2.and_guard(self.shifted_guard[e2.transition])
                    if z2.is_empty():
                        continue
                resets = ()
                if e1 is not None:
                    resets += self.trans[e1.transition].resets
                if e2 is not None:
                    resets += self.shifted_resets[e2.transition]
                z2 = z2.reset(resets).extrapolate(self.bound_max)
                out.append(
                    (
                        e1.target if e1 is not None else None,
                        e2.target if e2 is not None else None,
                        z2,
                    )
                )
        result = tuple(dict.fromkeys(out))
        if self.cache is not None:
            result = self.cache._put(self.cache._succ, key, result)
        return result

    def can_finish(self, b: int, zone: Dbm, remaining: int, counter: list[int]) -> bool:
        """Can copy 2 alone take ``remaining`` more steps from ``(b, zone)``?"""
        if remaining == 0:
            return True
        key = (b, zone, remaining)
        if self.cache is not None:
            hit = self.cache._get(self.cache._finish, key)
            if hit is not None:
                return hit
        counter[0] += 1
        if counter[0] > self.budget:
            raise BudgetExceeded
        result = any(
            self.can_finish(b2, z2, remaining - 1, counter)
            for _, b2, z2 in self.successors(None, b, zone)
        )
        if self.cache is not None:
            self.cache._put(self.cache._finish, key, result)
        return result

    def overlap_possible(self, location: str, n: int, k: int) -> bool:
        """Is there a copy-1 prefix into ``location`` of length ``k`` overlapping a copy-2
        accepting-run prefix of length ``m - 1`` shifted by ``n`` events?"""
        m = self.tps.m
        target = self.tps.coreach(location)
        good = self.good
        counter = [0]
        frontier = {(i0, None, self.start) for i0 in self.Z.initial if i0 in target}
        for step in range(1, k + 1):
            if step == n + 1:
                # copy 2 starts: its origin is anywhere between events n and n+1
                shifted = set()
                for a, _, zone in frontier:
                    z = zone.elapse().reset(self.copy2)
                    for b0 in self.Z.initial:
                        if b0 in good:
                            shifted.add((a, b0, z))
                frontier = shifted
            nxt = set()
            for a, b, zone in frontier:
                for a2, b2, z2 in self.successors(a, b, zone):
                    if a2 in target:
                        nxt.add((a2, b2, z2))
            counter[0] += len(nxt)
            if counter[0] > self.budget:
                raise BudgetExceeded
            frontier = nxt
            if not frontier:
                return False
        # copy 1 is complete; forget its clocks and finish copy 2 alone
        remaining = n + m - 1 - k
        done = {(b, zone.free(self.copy1)) for _, b, zone in frontier}
        return any(self.can_finish(b, zone, remaining, counter) for b, zone in done)


def compute_beta(
    A: TimedAutomaton,
    Z: ZoneAutomaton,
    tps: TimedPrefixSets,
    *,
    cache: ProductExplorationCache | None | bool = True,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> dict[str, int]:
    """β for every location; locations the zone automaton never reaches get 1."""
    if cache is True:
        cache = ProductExplorationCache()
    elif cache is False:
        cache = None
    product = _Product(Z, tps, cache, budget)

    def one(location: str) -> int:
        if location not in tps.m_s:
            return 1
        k = tps.prefix_length(location)
        try:
            for n in range(1, k):
                if product.overlap_possible(location, n, k):
                    return n
        except (BudgetExceeded, RecursionError):
            return 1
        return max(1, k)

    locations = list(A.locations)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(one, locations))
    else:
        values = [one(s) for s in locations]
    return dict(zip(locations, values))


@dataclass
class Precomputation:
    zone_automaton: ZoneAutomaton
    prefix_sets: TimedPrefixSets
    tables: TimedSkipTables
    timings: dict[str, float] = field(default_factory=dict)

    def __iter__(self):
        yield self.zone_automaton
        yield self.tables

    def dump(self) -> str:
        t = self.tables
        lines = [f"m {t.m}"]
        lines.append("tail " + (" ".join(sorted(t.tail)) if t.tail is not None else "(disabled)"))
        for a in sorted(t.delta):
            lines.append(f"delta {a} {t.delta[a]}")
        lines.append(f"delta <other> {t.m}")
        for s in self.zone_automaton.automaton.locations:
            lines.append(f"beta {s} {t.beta.get(s, 1)}")
        return "\n".join(lines)


def precompute(
    A: TimedAutomaton,
    *,
    subsumption: bool = True,
    cache: bool = True,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Precomputation:
    """Zone automaton, prefix data and skip tables, with per-phase wall times."""
    timings = {}
    t0 = time.perf_counter()
    Z = build_zone_automaton(A, subsumption=subsumption)
    t1 = time.perf_counter()
    tps = timed_prefix_sets(Z)
    t2 = time.perf_counter()
    if tps.m <= 1:
        # a bare $ edge leaves the initial location: no window to test
        tables = TimedSkipTables.ones(tps.m)
        t3 = t4 = t2
    else:
        delta = compute_delta(tps, A.alphabet)
        t3 = time.perf_counter()
        beta = compute_beta(A, Z, tps, cache=cache, budget=budget, workers=workers)
        t4 = time.perf_counter()
        tables = TimedSkipTables(tps.m, delta, beta, tps.tail_labels)
    timings["zone_automaton"] = t1 - t0
    timings["prefix_sets"] = t2 - t1
    timings["delta"] = t3 - t2
    timings["beta"] = t4 - t3
    timings["total"] = t4 - t0
    return Precomputation(Z, tps, tables, timings)
