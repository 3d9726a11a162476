"""Offline timed pattern matching: brute force and FJS-type skipping.

Positions are 1-based as in the usual presentation: event ``n`` is
``(labels[n-1], times[n-1])``, ``tau(0) = 0`` and ``tau(|w|+1) = inf``.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from .dbm import GE, GT, LE, LT
from .skips import Precomputation, TimedSkipTables, precompute
from .timed import TERMINAL, TimedAutomaton, TimedWord
from .untimed import NoAcceptedWord

INF = math.inf
# a bound is (value, closed) with closed in {0, 1}; tuple order is tightness order
OPEN_INF = (INF, 0)
LE_ZERO = (0.0, 1)
DECIMALS = 9
# a bound this many ulps from a short decimal is taken to be that decimal
SNAP_ULPS = 8

def _close3(d: list) -> bool:
    """Floyd-Warshall on a 3x3 bound matrix in place; False when empty."""
    for k in (0, 1, 2):
        k3 = 3 * k
        row_k = d[k3:k3 + 3]
        for i in (0, 1, 2):
            if i == k:
                continue
            dik = d[3 * i + k]
            vik = dik[0]
            if vik == INF:
                continue
            cik = dik[1]
            base = 3 * i
            for j in (0, 1, 2):
                if j == k:
                    continue
                dkj = row_k[j]
                v = vik + dkj[0]
                cur = d[base + j]
                if v < cur[0] or (v == cur[0] and cur[1] and not (cik and dkj[1])):
                    d[base + j] = (v, cik & dkj[1])
    return d[0] >= LE_ZERO and d[4] >= LE_ZERO and d[8] >= LE_ZERO


class MatchZone:
    """A convex set of ``(t, t')`` pairs kept as a canonical 3x3 DBM over ``(0, t, t')``."""

    __slots__ = ("d",)

    def __init__(self, d: Sequence[tuple[float, int]]):
        self.d = tuple(d)

    @classmethod
    def from_matrix(cls, d: list) -> MatchZone | None:
        d = list(d)
        for k in range(9):
            if d[k][0] == INF:
                d[k] = OPEN_INF
        if not _close3(d):
            return None
        return cls(d)

    @classmethod
    def from_bounds(
        cls,
        t: tuple[float, bool, float, bool],
        tp: tuple[float, bool, float, bool],
        dt: tuple[float, bool, float, bool] = (0.0, False, INF, False),
    ) -> MatchZone | None:
        """Build from ``(lo, lo_closed, hi, hi_closed)`` triples for t, t' and t' - t."""
        d = [LE_ZERO, (-t[0], int(t[1])), (-tp[0], int(tp[1])),
             (t[2], int(t[3])), LE_ZERO, (-dt[0], int(dt[1])),
             (tp[2], int(tp[3])), (dt[2], int(dt[3])), LE_ZERO]
        # t' - t > 0 always holds for a match
        if d[5] > (0.0, 0):
            d[5] = (0.0, 0)
        return cls.from_matrix(d)

    # accessors: (value, closed) pairs
    def t_lower(self):
        v, c = self.d[1]
        return (-v + 0.0, c)

    def t_upper(self):
        return self.d[3]

    def tp_lower(self):
        v, c = self.d[2]
        return (-v + 0.0, c)

    def tp_upper(self):
        return self.d[6]

    def dt_lower(self):
        v, c = self.d[5]
        return (-v + 0.0, c)

    def dt_upper(self):
        return self.d[7]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatchZone) and self.d == other.d

    def __hash__(self) -> int:
        return hash(self.d)

    def __repr__(self) -> str:
        return f"MatchZone({format_zone(self)})"

    def contains(self, t: float, tp: float) -> bool:
        v = (0.0, t, tp)
        d = self.d
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                b = d[3 * i + j]
                diff = v[i] - v[j]
                if diff > b[0] or (diff == b[0] and not b[1]):
                    return False
        return True

    def includes(self, other: MatchZone) -> bool:
        return all(b <= a for a, b in zip(self.d, other.d))

    def rounded(self, decimals: int = DECIMALS) -> MatchZone | None:
        """Snap bounds that sit within float noise of a ``decimals``-place value."""
        return MatchZone.from_matrix([(_snap(v, decimals), c) for v, c in self.d])

    def intersect(self, i: int, j: int, b) -> MatchZone | None:
        d = list(self.d)
        if b < d[3 * i + j]:
            d[3 * i + j] = b
            return MatchZone.from_matrix(d)
        return self

    def sort_key(self):
        lo, hi = self.t_lower(), self.t_upper()
        return (lo[0], -lo[1], hi[0], hi[1], self.d)


def _snap(v: float, decimals: int) -> float:
    if v == INF:
        return v
    r = round(v, decimals)
    return r + 0.0 if abs(v - r) <= SNAP_ULPS * math.ulp(v) else v


def format_bound_pair(lo, hi) -> str:
    def num(x: float) -> str:
        if x == INF:
            return "inf"
        # shortest text that reads back as the same float
        text = repr(x + 0.0)
        return text[:-2] if text.endswith(".0") else text

    left = "[" if lo[1] else "("
    right = "]" if hi[1] and hi[0] != INF else ")"
    return f"{left}{num(lo[0])},{num(hi[0])}{right}"


def format_zone(z: MatchZone) -> str:
    return (
        f"t:{format_bound_pair(z.t_lower(), z.t_upper())} "
        f"t':{format_bound_pair(z.tp_lower(), z.tp_upper())} "
        f"dt:{format_bound_pair(z.dt_lower(), z.dt_upper())}"
    )


# eval / reset / solConstr ---------------------------------------------------


def sol_constr(
    T: tuple[float, bool, float, bool],
    T2: tuple[float, bool, float, bool],
    rho: Sequence[float | None],
    guard: Iterable[tuple[int, str, int]],
) -> MatchZone | None:
    """All ``(t, t')`` with ``t in T``, ``t' in T2`` and the guard satisfied at ``t'``.

    ``rho[x]`` is the absolute reset time of clock ``x`` or ``None`` when the
    clock still measures time since ``t``.  Returns ``None`` when empty.
    """
    d = [LE_ZERO, (-T[0], int(T[1])), (-T2[0], int(T2[1])),
         (T[2], int(T[3])), LE_ZERO, (0.0, 0),
         (T2[2], int(T2[3])), OPEN_INF, LE_ZERO]
    for x, op, c in guard:
        r = rho[x]
        if r is None:
            # t' - t op c
            if op == LT:
                b, k = (c, 0), 7
            elif op == LE:
                b, k = (c, 1), 7
            elif op == GT:
                b, k = (-c, 0), 5
            else:
                b, k = (-c, 1), 5
        else:
            # t' - r op c
            if op == LT:
                b, k = (r + c, 0), 6
            elif op == LE:
                b, k = (r + c, 1), 6
            elif op == GT:
                b, k = (-(r + c), 0), 2
            else:
                b, k = (-(r + c), 1), 2
        if b < d[k]:
            d[k] = b
    return MatchZone.from_matrix(d)


# compiled pattern and the shared trial step ----------------------------------


class CompiledPattern:
    """Transition lookup tables used by every matcher."""

    def __init__(self, A: TimedAutomaton):
        index = A.clock_index()
        self.automaton = A
        self.nclocks = len(A.clocks)
        self.initial = tuple(sorted(A.initial))
        self.trans: dict[tuple[str, str], list] = {}
        self.dollar: dict[str, list] = {}
        for tr in A.transitions:
            guard = tuple((index[a.clock], a.op, a.bound) for a in tr.guard.atoms)
            if tr.label == TERMINAL:
                self.dollar.setdefault(tr.source, []).append(guard)
            else:
                resets = tuple(sorted(index[x] for x in tr.resets))
                self.trans.setdefault((tr.source, tr.label), []).append((tr.target, guard, resets))
        self.empty_rho = (None,) * self.nclocks
        self.initial_dollar = any(s in self.dollar for s in self.initial)


Emit = Callable[[MatchZone], None]


def start_trial(P: CompiledPattern, lo: float, hi: float, emit: Emit) -> dict:
    """Configurations for origins in ``[lo, hi)``; emits the event-free matches."""
    rho = P.empty_rho
    if P.initial_dollar:
        empty_segment_matches(P, lo, hi, emit)
    return {(s, rho, lo, True, hi, False): None for s in P.initial}


def empty_segment_matches(P: CompiledPattern, lo: float, hi: float, emit: Emit) -> None:
    """Matches whose segment holds no event: ``t in [lo, hi)``, ``t' in (t, hi]``."""
    rho = P.empty_rho
    T = (lo, True, hi, False)
    T2 = (lo, False, hi, hi != INF)
    for s in P.initial:
        for guard in P.dollar.get(s, ()):
            z = sol_constr(T, T2, rho, guard)
            if z is not None:
                emit(z)


def step(
    P: CompiledPattern, configs: dict, label: str, tau: float, tau_next: float, emit: Emit
) -> dict:
    """Consume one event; emit every match ending between ``tau`` and ``tau_next``."""
    out: dict = {}
    trans = P.trans
    dollar = P.dollar
    for loc, rho, lo, loc_, hi, hic in configs:
        for target, guard, resets in trans.get((loc, label), ()):
            nlo, nlc, nhi, nhc = lo, loc_, hi, hic
            ok = True
            for x, op, c in guard:
                r = rho[x]
                if r is None:
                    b = tau - c
                    if op == LT:
                        if b > nlo or (b == nlo and nlc):
                            nlo, nlc = b, False
                    elif op == LE:
                        if b > nlo:
                            nlo, nlc = b, True
                    elif op == GT:
                        if b < nhi or (b == nhi and nhc):
                            nhi, nhc = b, False
                    elif b < nhi:
                        nhi, nhc = b, True
                else:
                    v = tau - r
                    if op == LT:
                        ok = v < c
                    elif op == LE:
                        ok = v <= c
                    elif op == GT:
                        ok = v > c
                    else:
                        ok = v >= c
                    if not ok:
                        break
            if not ok or nlo > nhi or (nlo == nhi and not (nlc and nhc)):
                continue
            if resets:
                nrho = list(rho)
                for x in resets:
                    nrho[x] = tau
                nrho = tuple(nrho)
            else:
                nrho = rho
            key = (target, nrho, nlo, nlc, nhi, nhc)
            if key in out:
                continue
            out[key] = None
            guards = dollar.get(target)
            if guards:
                T = (nlo, nlc, nhi, nhc)
                T2 = (tau, False, tau_next, tau_next != INF)
                for g in guards:
                    z = sol_constr(T, T2, nrho, g)
                    if z is not None:
                        emit(z)
    return out


def _trial(P: CompiledPattern, labels, times, n: int, emit: Emit) -> set[str]:
    """Full trial from start ``n``; returns the locations where it got stuck."""
    size = len(labels)
    lo = times[n - 2] if n >= 2 else 0.0
    hi = times[n - 1] if n <= size else INF
    configs = start_trial(P, lo, hi, emit)
    stuck = configs
    for k in range(n - 1, size):
        nxt = step(P, configs, labels[k], times[k], times[k + 1] if k + 1 < size else INF, emit)
        if not nxt:
            break
        configs = stuck = nxt
    return {c[0] for c in stuck}


def brute_force_match(w: TimedWord, A: TimedAutomaton, *, pattern: CompiledPattern | None = None) -> list[MatchZone]:
    P = pattern or CompiledPattern(A)
    out: list[MatchZone] = []
    labels, times = w.labels, w.times
    for n in range(1, len(labels) + 2):
        _trial(P, labels, times, n, out.append)
    return out


def fjs_match(
    w: TimedWord,
    A: TimedAutomaton,
    tables: TimedSkipTables | Precomputation | None = None,
    *,
    pattern: CompiledPattern | None = None,
    trace: list[int] | None = None,
) -> list[MatchZone]:
    """Matching with quick-search and KMP-style skips.

    ``trace`` receives every start position the loop considers, whether or not
    a full trial is run there.
    """
    if isinstance(tables, Precomputation):
        tables = tables.tables
    if tables is None:
        try:
            tables = precompute(A).tables
        except NoAcceptedWord:
            return []
    P = pattern or CompiledPattern(A)
    out: list[MatchZone] = []
    emit = out.append
    labels, times = w.labels, w.times
    size = len(labels)
    m = tables.m
    tail = tables.tail
    limit = size - m + 2
    n = 1
    while n <= limit:
        if trace is not None:
            trace.append(n)
        if tail is not None:
            while labels[n + m - 3] not in tail:
                if n + m - 1 > size:
                    return out
                n += tables.shift(labels[n + m - 2])
                if n > limit:
                    return out
                if trace is not None:
                    trace.append(n)
        stuck = _trial(P, labels, times, n, emit)
        skip = tables.kmp(stuck) if tail is not None else 1
        if P.initial_dollar:
            # event-free matches at skipped start positions
            for k in range(n + 1, min(n + skip, size + 2)):
                empty_segment_matches(P, times[k - 2], times[k - 1] if k <= size else INF, emit)
        n += skip
    return out


# match-set algebra -------------------------------------------------------------


def _negate(b):
    v, closed = b
    return (-v, 1 - closed)


def subtract(z: MatchZone, y: MatchZone) -> list[MatchZone]:
    """``z \\ y`` as a list of disjoint zones."""
    pieces = []
    cur: MatchZone | None = z
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            b = y.d[3 * i + j]
            if b[0] == INF or cur.d[3 * i + j] <= b:
                continue
            p = cur.intersect(j, i, _negate(b))
            if p is not None:
                pieces.append(p)
            cur = cur.intersect(i, j, b)
            if cur is None:
                return pieces
    return pieces


def subtract_all(zs: Iterable[MatchZone], ys: Iterable[MatchZone]) -> list[MatchZone]:
    rest = list(zs)
    for y in ys:
        if not rest:
            break
        rest = [p for z in rest for p in subtract(z, y)]
    return rest


def equivalent(a: Iterable[MatchZone], b: Iterable[MatchZone]) -> bool:
    """Semantic equality of two zone unions."""
    a, b = list(a), list(b)
    return not subtract_all(a, b) and not subtract_all(b, a)


def contains(ms: Iterable[MatchZone], t: float, tp: float) -> bool:
    return any(z.contains(t, tp) for z in ms)


def _hull(a: MatchZone, b: MatchZone) -> MatchZone:
    return MatchZone([max(x, y) for x, y in zip(a.d, b.d)])


def normalize(ms: Iterable[MatchZone], decimals: int = DECIMALS) -> list[MatchZone]:
    """Snap float noise (see :meth:`MatchZone.rounded`), drop duplicates and subsumed zones, merge
    pairs whose hull equals their union, and sort.

    The result is deterministic for a given input set; :func:`equivalent` is
    the semantic comparison.
    """
    zones = {r for z in ms if (r := z.rounded(decimals)) is not None}
    while True:
        changed = False
        done: list[MatchZone] = []
        active: list[MatchZone] = []
        for z in sorted(zones, key=MatchZone.sort_key):
            lo = z.t_lower()[0]
            still = []
            for y in active:
                (done if y.t_upper()[0] < lo else still).append(y)
            active = still
            for idx, y in enumerate(active):
                if y.includes(z):
                    break
                if z.includes(y):
                    active[idx] = z
                    changed = True
                    break
                h = _hull(y, z)
                if not subtract_all([h], [y, z]):
                    active[idx] = h
                    changed = True
                    break
            else:
                active.append(z)
        zones = set(done) | set(active)
        if not changed:
            return sorted(zones, key=MatchZone.sort_key)
