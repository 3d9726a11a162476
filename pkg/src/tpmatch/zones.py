"""Zone automaton of a pattern and the shortest-prefix data derived from it."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .dbm import Dbm
from .timed import TERMINAL, TimedAutomaton
from .untimed import NoAcceptedWord, PrefixExplosion

DEFAULT_PATH_CAP = 100_000


@dataclass(frozen=True, slots=True)
class ZaState:
    location: str
    zone: Dbm


@dataclass(frozen=True, slots=True)
class ZaEdge:
    source: int
    target: int
    transition: int  # index into the automaton's transition tuple
    label: str


@dataclass(frozen=True, slots=True)
class CompiledTransition:
    source: str
    target: str
    label: str
    guard: tuple[tuple[int, str, int], ...]  # (clock index, op, constant)
    resets: tuple[int, ...]


def compile_transitions(A: TimedAutomaton) -> tuple[CompiledTransition, ...]:
    index = A.clock_index()
    return tuple(
        CompiledTransition(
            tr.source,
            tr.target,
            tr.label,
            tuple((index[a.clock], a.op, a.bound) for a in tr.guard.atoms),
            tuple(sorted(index[x] for x in tr.resets)),
        )
        for tr in A.transitions
    )


@dataclass
class ZoneAutomaton:
    automaton: TimedAutomaton
    states: list[ZaState]
    initial: list[int]
    edges: list[ZaEdge]
    max_constant: int
    out: list[list[ZaEdge]] = field(repr=False, default_factory=list)

    def __post_init__(self):
        if not self.out:
            self.out = [[] for _ in self.states]
            for e in self.edges:
                self.out[e.source].append(e)
        self.accepting = frozenset(
            k for k, st in enumerate(self.states) if st.location in self.automaton.accepting
        )

    def __len__(self) -> int:
        return len(self.states)

    def coreachable(self, targets) -> frozenset[int]:
        preds: list[list[int]] = [[] for _ in self.states]
        for e in self.edges:
            preds[e.target].append(e.source)
        seen = set(targets)
        todo = deque(seen)
        while todo:
            k = todo.popleft()
            for p in preds[k]:
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def dump(self) -> str:
        names = self.automaton.clocks
        lines = [f"states {len(self.states)} edges {len(self.edges)} M={self.max_constant}"]
        for k, st in enumerate(self.states):
            flags = ("initial " if k in self.initial else "") + ("accepting" if k in self.accepting else "")
            lines.append(f"  z{k} {st.location} [{st.zone.to_text(names)}] {flags}".rstrip())
        for e in self.edges:
            lines.append(f"  z{e.source} -{e.label}-> z{e.target} (transition {e.transition + 1})")
        return "\n".join(lines)


def successor_zone(zone: Dbm, tr: CompiledTransition, bound_max: int) -> Dbm:
    return zone.elapse().and_guard(tr.guard).reset(tr.resets).extrapolate(bound_max)


def build_zone_automaton(A: TimedAutomaton, *, subsumption: bool = True) -> ZoneAutomaton:
    """Breadth-first forward exploration from the zero zone at every initial location.

    With ``subsumption`` a successor whose zone is included in an already known
    zone at the same location is redirected to that state.
    """
    compiled = compile_transitions(A)
    by_source: dict[str, list[int]] = {}
    for k, tr in enumerate(compiled):
        by_source.setdefault(tr.source, []).append(k)
    bound_max = A.max_constant
    zero = Dbm.zero(len(A.clocks))

    states: list[ZaState] = []
    index: dict[ZaState, int] = {}
    per_location: dict[str, list[int]] = {}
    edges: list[ZaEdge] = []

    def intern(st: ZaState) -> tuple[int, bool]:
        k = index.get(st)
        if k is not None:
            return k, False
        if subsumption:
            for j in per_location.get(st.location, ()):
                if states[j].zone.includes(st.zone):
                    return j, False
        k = len(states)
        states.append(st)
        index[st] = k
        per_location.setdefault(st.location, []).append(k)
        return k, True

    initial = []
    todo: deque[int] = deque()
    for s in sorted(A.initial):
        k, fresh = intern(ZaState(s, zero))
        initial.append(k)
        if fresh:
            todo.append(k)
    while todo:
        k = todo.popleft()
        st = states[k]
        for t in by_source.get(st.location, ()):
            tr = compiled[t]
            z = successor_zone(st.zone, tr, bound_max)
            if z.is_empty():
                continue
            j, fresh = intern(ZaState(tr.target, z))
            edges.append(ZaEdge(k, j, t, tr.label))
            if fresh:
                todo.append(j)
    return ZoneAutomaton(A, states, initial, edges, bound_max)


@dataclass
class TimedPrefixSets:
    """Shortest accepting-run data of a zone automaton.

    ``m`` counts the terminal event.  ``layers[k]`` holds the states reachable
    in exactly ``k`` steps for ``k < m``.  ``edge_labels[i - 1]`` holds the labels
    carried by edge ``i`` (1-based) over all run prefixes of length ``m - 1``
    that extend to an accepting run.
    """

    za: ZoneAutomaton
    m: int
    m_s: dict[str, int]
    layers: list[frozenset[int]]
    coreach_accepting: frozenset[int]
    edge_labels: list[frozenset[str]]
    _coreach: dict[str, frozenset[int]] = field(default_factory=dict, repr=False)

    @property
    def tail_labels(self) -> frozenset[str]:
        return self.edge_labels[-1] if self.edge_labels else frozenset()

    def prefix_length(self, location: str) -> int:
        """Length of the run prefixes kept for ``location``: ``min(m_s, m - 1)``."""
        return min(self.m_s[location], self.m - 1)

    def coreach(self, location: str) -> frozenset[int]:
        out = self._coreach.get(location)
        if out is None:
            targets = [k for k, st in enumerate(self.za.states) if st.location == location]
            out = self.za.coreachable(targets)
            self._coreach[location] = out
        return out

    def _paths(self, length: int, goal: frozenset[int], cap: int) -> list[tuple[int, ...]]:
        found: list[tuple[int, ...]] = []
        out = self.za.out

        def walk(k: int, path: tuple[int, ...]):
            if len(path) == length:
                found.append(path)
                if len(found) > cap:
                    raise PrefixExplosion(f"more than {cap} run prefixes")
                return
            for e in out[k]:
                if e.label != TERMINAL and e.target in goal:
                    walk(e.target, path + ((e.source, e.transition, e.target),))

        for k in self.za.initial:
            if k in goal:
                walk(k, ())
        return found

    def paths(self, cap: int = DEFAULT_PATH_CAP):
        """Run prefixes of length ``m - 1`` as tuples of ``(source, transition, target)``."""
        return self._paths(self.m - 1, self.coreach_accepting, cap)

    def paths_to(self, location: str, cap: int = DEFAULT_PATH_CAP):
        if location not in self.m_s:
            return []
        return self._paths(self.prefix_length(location), self.coreach(location), cap)


def timed_prefix_sets(Z: ZoneAutomaton) -> TimedPrefixSets:
    depth = {k: 0 for k in Z.initial}
    todo = deque(Z.initial)
    while todo:
        k = todo.popleft()
        for e in Z.out[k]:
            if e.target not in depth:
                depth[e.target] = depth[k] + 1
                todo.append(e.target)
    finals = [depth[k] for k in Z.accepting if k in depth]
    if not finals:
        raise NoAcceptedWord("no accepting location is reachable")
    m = min(finals)
    m_s: dict[str, int] = {}
    for k, d in depth.items():
        loc = Z.states[k].location
        m_s[loc] = min(d, m_s.get(loc, d))

    layers = [frozenset(Z.initial)]
    for _ in range(1, m):
        layers.append(frozenset(e.target for k in layers[-1] for e in Z.out[k]))
    good = Z.coreachable(Z.accepting)
    edge_labels = []
    for i in range(1, m):
        edge_labels.append(
            frozenset(
                e.label
                for k in layers[i - 1]
                for e in Z.out[k]
                if e.target in good and e.label != TERMINAL
            )
        )
    return TimedPrefixSets(Z, m, m_s, layers, good, edge_labels)
