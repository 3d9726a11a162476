"""Streaming FJS-type matcher with a bounded event buffer."""

from __future__ import annotations

import math
from collections import deque
from typing import Callable

from .matching import (
    CompiledPattern,
    MatchZone,
    empty_segment_matches,
    start_trial,
    step,
)
from .skips import Precomputation, TimedSkipTables, precompute
from .timed import TERMINAL, NonMonotoneTimestamp, NonPositiveTimestamp, ReservedLabel, TimedAutomaton

INF = math.inf


class OutOfOrderEvent(NonMonotoneTimestamp):
    def __init__(self, index: int, timestamp: float, previous: float):
        self.timestamp = timestamp
        self.previous = previous
        super().__init__(
            index, f"event {index} at {timestamp} does not come after {previous}"
        )


class BufferOverflow(RuntimeError):
    def __init__(self, limit: int, needed: int):
        self.limit = limit
        self.needed = needed
        super().__init__(f"buffer needs {needed} events but the limit is {limit}")


class StreamClosed(RuntimeError):
    pass


class OnlineMatcher:
    """Feed events one at a time; matches go to ``sink`` as soon as they are fixed.

    The buffer holds the events from index ``n - 1`` (the one fixing the lower
    end of the current start interval) up to the newest event.  Processing
    event ``k`` in a trial waits for event ``k + 1`` so that the end of the
    match interval is known; at :meth:`close` that end becomes ``inf``.
    """

    def __init__(
        self,
        A: TimedAutomaton,
        tables: TimedSkipTables | Precomputation | None = None,
        sink: Callable[[MatchZone], None] | None = None,
        *,
        max_buffer: int | None = None,
    ):
        if isinstance(tables, Precomputation):
            tables = tables.tables
        if tables is None:
            tables = precompute(A).tables
        self.tables = tables
        self.pattern = CompiledPattern(A)
        self.matches: list[MatchZone] = []
        self.sink = sink if sink is not None else self.matches.append
        self.max_buffer = max_buffer
        self.buffer: deque[tuple[str, float]] = deque()
        self.base = 1  # global index of buffer[0]
        self.received = 0
        self.closed = False
        self.peak_buffer = 0
        self.trials = 0
        self._last_time = 0.0
        self._n = 1
        self._configs: dict | None = None  # None between trials
        self._pos = 0  # next event index inside a trial
        self._stuck: dict | None = None
        self._finished = False

    # event access ---------------------------------------------------------

    def _has(self, k: int) -> bool:
        return k <= self.received

    def _event(self, k: int) -> tuple[str, float]:
        return self.buffer[k - self.base]

    def _time(self, k: int) -> float:
        if k <= 0:
            return 0.0
        if k > self.received:
            return INF
        return self.buffer[k - self.base][1]

    def _release(self):
        keep = self._n - 1
        while self.buffer and self.base < keep:
            self.buffer.popleft()
            self.base += 1

    # public API -----------------------------------------------------------

    def feed(self, label: str, timestamp: float) -> None:
        if self.closed:
            raise StreamClosed("stream already closed")
        index = self.received + 1
        timestamp = float(timestamp)
        if label == TERMINAL:
            raise ReservedLabel(index)
        if not timestamp > 0:
            raise NonPositiveTimestamp(index)
        if index > 1 and not timestamp > self._last_time:
            raise OutOfOrderEvent(index, timestamp, self._last_time)
        self._last_time = timestamp
        self.received = index
        if index >= self._n - 1:
            if not self.buffer:
                self.base = index
            self.buffer.append((label, timestamp))
            if self.max_buffer is not None and len(self.buffer) > self.max_buffer:
                raise BufferOverflow(self.max_buffer, len(self.buffer))
            self.peak_buffer = max(self.peak_buffer, len(self.buffer))
        self._advance()

    def close(self) -> list[MatchZone]:
        """Mark end of stream and flush; returns everything collected by the default sink."""
        if not self.closed:
            self.closed = True
            self._advance()
        return self.matches

    # engine ---------------------------------------------------------------

    def _advance(self) -> None:
        tables = self.tables
        m = tables.m
        tail = tables.tail
        P = self.pattern
        while not self._finished:
            if self._configs is None:
                n = self._n
                if tail is not None:
                    # need event n+m-2 for the tail test
                    if not self._has(n + m - 2):
                        if self.closed:
                            self._finished = True
                        return
                    if self._event(n + m - 2)[0] not in tail:
                        if not self._has(n + m - 1):
                            if self.closed:
                                self._finished = True
                            return
                        self._n = n + tables.shift(self._event(n + m - 1)[0])
                        self._release()
                        continue
                else:
                    limit = self.received - m + 2
                    if not self._has(n) and not self.closed:
                        return
                    if self.closed and n > limit:
                        self._finished = True
                        return
                self.trials += 1
                self._configs = start_trial(P, self._time(n - 1), self._time(n), self.sink)
                self._stuck = self._configs
                self._pos = n
            # inside a trial: consume event _pos once its successor is known
            k = self._pos
            if not self._has(k):
                if not self.closed:
                    return
                self._end_trial()
                continue
            if not self._has(k + 1) and not self.closed:
                return
            label, tau = self._event(k)
            nxt = step(P, self._configs, label, tau, self._time(k + 1), self.sink)
            if not nxt:
                self._end_trial()
                continue
            self._configs = self._stuck = nxt
            self._pos = k + 1

    def _end_trial(self) -> None:
        n = self._n
        stuck = {c[0] for c in self._stuck}
        skip = self.tables.kmp(stuck) if self.tables.tail is not None else 1
        P = self.pattern
        if P.initial_dollar:
            for k in range(n + 1, n + skip):
                empty_segment_matches(P, self._time(k - 1), self._time(k), self.sink)
        self._configs = None
        self._stuck = None
        self._n = n + skip
        self._release()


def online_match(events, A: TimedAutomaton, tables=None, sink=None, *, max_buffer=None) -> OnlineMatcher:
    """Run an iterable of ``(label, timestamp)`` through a fresh matcher and close it."""
    matcher = OnlineMatcher(A, tables, sink, max_buffer=max_buffer)
    for label, tau in events:
        matcher.feed(label, tau)
    matcher.close()
    return matcher
