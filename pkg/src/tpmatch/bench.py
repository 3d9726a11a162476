"""Wall-clock benchmark harness producing CSV rows."""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, TextIO

from .generators import generate
from .matching import CompiledPattern, brute_force_match, fjs_match
from .online import OnlineMatcher
from .skips import precompute
from .timed import TimedAutomaton, validate_word

ALGORITHMS = ("fjs", "bruteforce", "online")
FIELDS = ("size", "algorithm", "run", "wall_time_s", "peak_buffer")


@dataclass(slots=True)
class BenchRow:
    size: int | str
    algorithm: str
    run: int | str
    wall_time_s: float
    peak_buffer: int | str

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "algorithm": self.algorithm,
            "run": self.run,
            "wall_time_s": f"{self.wall_time_s:.6f}",
            "peak_buffer": self.peak_buffer,
        }


def time_once(A: TimedAutomaton, pre, words, algorithm: str) -> tuple[float, int]:
    """Run one algorithm on a prepared word; returns (seconds, peak buffered events)."""
    pattern = CompiledPattern(A)
    if algorithm == "fjs":
        start = time.perf_counter()
        fjs_match(words, A, pre.tables, pattern=pattern)
        return time.perf_counter() - start, len(words)
    if algorithm == "bruteforce":
        start = time.perf_counter()
        brute_force_match(words, A, pattern=pattern)
        return time.perf_counter() - start, len(words)
    if algorithm == "online":
        start = time.perf_counter()
        matcher = OnlineMatcher(A, pre.tables, sink=lambda z: None)
        for label, tau in words:
            matcher.feed(label, tau)
        matcher.close()
        return time.perf_counter() - start, matcher.peak_buffer
    raise ValueError(f"unknown algorithm {algorithm!r}")


def run_bench(
    A: TimedAutomaton,
    sizes: Iterable[int],
    algorithms: Iterable[str] = ("fjs", "bruteforce"),
    repeats: int = 5,
    *,
    profile: str = "simple-alternation",
    seed: int = 0,
    rate: float = 1.0,
) -> tuple[float, list[BenchRow]]:
    """Returns the preprocessing time and per-run rows plus one ``mean`` row per cell."""
    pre = precompute(A)
    rows: list[BenchRow] = []
    algorithms = list(algorithms)
    for size in sizes:
        word = validate_word(generate(profile, size, seed, rate))
        for algorithm in algorithms:
            runs = []
            for run in range(1, repeats + 1):
                seconds, peak = time_once(A, pre, word, algorithm)
                runs.append((seconds, peak))
                rows.append(BenchRow(size, algorithm, run, seconds, peak))
            rows.append(
                BenchRow(
                    size,
                    algorithm,
                    "mean",
                    statistics.fmean(s for s, _ in runs),
                    max(p for _, p in runs),
                )
            )
    return pre.timings["total"], rows


def write_csv(preprocess_s: float, rows: Iterable[BenchRow], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(BenchRow("", "preprocess", "", preprocess_s, "").as_dict())
    for row in rows:
        writer.writerow(row.as_dict())
