"""Simplified Franek-Jennings-Smyth string matching.

Positions are 1-based and matches are inclusive ``(i, j)`` pairs so that
``w[i-1:j] == pat``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True, slots=True)
class StringSkipTables:
    delta: dict[Hashable, int]
    beta: tuple[int, ...]
    length: int

    def shift(self, symbol: Hashable) -> int:
        # symbols absent from the pattern jump past the whole window
        return self.delta.get(symbol, self.length + 1)


def build_string_delta(pat: Sequence[Hashable]) -> dict[Hashable, int]:
    """Distance from the right end of ``pat`` to the last occurrence of each symbol."""
    if not pat:
        raise ValueError("pattern must be non-empty")
    size = len(pat)
    delta: dict[Hashable, int] = {}
    for i in range(size, 0, -1):
        delta[pat[size - i]] = i
    return delta


def build_string_beta(pat: Sequence[Hashable]) -> tuple[int, ...]:
    """``beta[p]`` for ``p`` in ``0..len(pat)``: smallest shift keeping ``pat[:p]`` aligned."""
    if not pat:
        raise ValueError("pattern must be non-empty")
    size = len(pat)
    pat = list(pat)
    out = [1]
    for p in range(1, size + 1):
        n = 1
        while n < p and pat[: p - n] != pat[n:p]:
            n += 1
        out.append(n)
    return tuple(out)


def build_string_tables(pat: Sequence[Hashable]) -> StringSkipTables:
    return StringSkipTables(build_string_delta(pat), build_string_beta(pat), len(pat))


def fjs_string_match(
    w: Sequence[Hashable],
    pat: Sequence[Hashable],
    *,
    tables: StringSkipTables | None = None,
    trace: list[int] | None = None,
) -> set[tuple[int, int]]:
    """All ``(i, j)`` with ``w(i..j) == pat``.

    When ``trace`` is given, every window position the loop reaches is appended.
    """
    tables = tables or build_string_tables(pat)
    size = len(pat)
    last = pat[-1]
    limit = len(w) - size + 1
    found: set[tuple[int, int]] = set()
    n = 1
    while n <= limit:
        if trace is not None:
            trace.append(n)
        # quick-search phase on the tail character
        while w[n + size - 2] != last:
            if n + size - 1 >= len(w):
                return found
            n += tables.shift(w[n + size - 1])
            if n > limit:
                return found
            if trace is not None:
                trace.append(n)
        matched = 0
        while matched < size and w[n + matched - 1] == pat[matched]:
            matched += 1
        if matched == size:
            found.add((n, n + size - 1))
        n += tables.beta[matched]
    return found


def naive_string_match(w: Sequence[Hashable], pat: Sequence[Hashable]) -> set[tuple[int, int]]:
    size = len(pat)
    return {
        (i + 1, i + size)
        for i in range(len(w) - size + 1)
        if list(w[i : i + size]) == list(pat)
    }
