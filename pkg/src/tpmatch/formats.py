"""Text formats for patterns, timed words and match sets.

Pattern files are line based::

    # a, a, a and then the end of the segment
    clocks x
    initial s0
    accepting s4
    s0 -> s1 a [x > 1] {x}
    s3 -> s4 $

Optional ``locations`` and ``alphabet`` lines declare extra names.  A guard is
``true`` or atoms ``clock op int`` joined by ``&`` with op one of
``< <= > >=``; resets are a brace list separated by commas or spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, TextIO

from .matching import INF, MatchZone, format_zone
from .timed import (
    Atom,
    Guard,
    TimedAutomaton,
    TimedModelError,
    TimedWord,
    Transition,
    validate_word,
)
from .untimed import Nfa


class ParseError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ValidationError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_EDGE = re.compile(
    r"^(?P<src>[^\s\-]\S*)\s*->\s*(?P<dst>\S+)\s+(?P<label>[^\s\[\{]+)"
    r"(?:\s*\[(?P<guard>[^\]]*)\])?(?:\s*\{(?P<resets>[^}]*)\})?\s*$"
)
_ATOM = re.compile(r"^\s*([A-Za-z_][\w']*)\s*(<=|>=|<|>)\s*(\d+)\s*$")
_IDENT = re.compile(r"^[A-Za-z_][\w']*$")


def parse_guard(text: str) -> Guard:
    text = text.strip()
    if text in ("", "true"):
        return Guard()
    atoms = []
    for part in text.split("&"):
        found = _ATOM.match(part)
        if not found:
            raise ValueError(f"malformed guard atom {part.strip()!r}")
        clock, op, value = found.groups()
        atoms.append(Atom(clock, op, int(value)))
    return Guard(tuple(atoms))


@dataclass
class PatternFile:
    clocks: list[str] = field(default_factory=list)
    initial: list[str] = field(default_factory=list)
    accepting: list[str] = field(default_factory=list)
    locations: list[str] = field(default_factory=list)
    alphabet: list[str] = field(default_factory=list)
    transitions: list[tuple[int, Transition]] = field(default_factory=list)

    def all_locations(self) -> list[str]:
        seen = dict.fromkeys((*self.locations, *self.initial))
        for _, tr in self.transitions:
            seen.setdefault(tr.source)
            seen.setdefault(tr.target)
        for name in self.accepting:
            seen.setdefault(name)
        return list(seen)


def parse_pattern_text(text: str) -> PatternFile:
    pf = PatternFile()
    keywords = {
        "clocks": pf.clocks,
        "initial": pf.initial,
        "accepting": pf.accepting,
        "locations": pf.locations,
        "alphabet": pf.alphabet,
    }
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head.rstrip(":") in keywords and "->" not in line:
            names = rest.replace(",", " ").split()
            for name in names:
                if not _IDENT.match(name):
                    raise ParseError(lineno, f"bad name {name!r}")
            keywords[head.rstrip(":")].extend(names)
            continue
        found = _EDGE.match(line)
        if not found:
            raise ParseError(lineno, f"cannot parse {line!r}")
        src, dst, label = found.group("src"), found.group("dst"), found.group("label")
        where = f"transition {src} -> {dst} {label}"
        try:
            guard = parse_guard(found.group("guard") or "")
        except (ValueError, TimedModelError) as exc:
            raise ParseError(lineno, f"{where}: {exc}") from None
        resets = (found.group("resets") or "").replace(",", " ").split()
        for x in resets:
            if not _IDENT.match(x):
                raise ParseError(lineno, f"{where}: bad clock name {x!r}")
        pf.transitions.append((lineno, Transition(src, dst, label, guard, frozenset(resets))))
    return pf


def build_automaton(pf: PatternFile) -> TimedAutomaton:
    transitions = tuple(tr for _, tr in pf.transitions)
    try:
        return TimedAutomaton(
            locations=tuple(pf.all_locations()),
            initial=frozenset(pf.initial),
            accepting=frozenset(pf.accepting),
            clocks=tuple(pf.clocks),
            transitions=transitions,
            alphabet=frozenset(pf.alphabet),
        )
    except TimedModelError as exc:
        line = None
        text = str(exc)
        hit = re.match(r"transition (\d+) ", text)
        if hit:
            line = pf.transitions[int(hit.group(1)) - 1][0]
        raise ValidationError(line, text) from None


def parse_pattern(text: str) -> TimedAutomaton:
    return build_automaton(parse_pattern_text(text))


def load_pattern(path: str | Path) -> TimedAutomaton:
    return parse_pattern(Path(path).read_text())


def parse_nfa(text: str) -> Nfa:
    """An NFA in the pattern format; guards, resets and clocks are rejected."""
    pf = parse_pattern_text(text)
    if pf.clocks:
        raise ValidationError(None, "an NFA pattern declares no clocks")
    edges = []
    for lineno, tr in pf.transitions:
        if tr.guard.atoms or tr.resets:
            raise ValidationError(lineno, "NFA transitions carry no guards or resets")
        edges.append((tr.source, tr.label, tr.target))
    if not pf.initial:
        raise ValidationError(None, "no initial state")
    return Nfa(frozenset(pf.all_locations()), frozenset(pf.initial), frozenset(pf.accepting),
               tuple(edges), frozenset(pf.alphabet))


def load_nfa(path: str | Path) -> Nfa:
    return parse_nfa(Path(path).read_text())


# words ---------------------------------------------------------------------


def parse_event_line(line: str, lineno: int | None = None) -> tuple[str, float] | None:
    """``label timestamp``; returns None for blank or comment lines."""
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    parts = body.split()
    if len(parts) != 2:
        raise ParseError(lineno, f"expected 'label timestamp', got {body!r}")
    label, stamp = parts
    try:
        value = Decimal(stamp)
    except InvalidOperation:
        raise ParseError(lineno, f"bad timestamp {stamp!r}") from None
    if not value.is_finite():
        raise ParseError(lineno, f"bad timestamp {stamp!r}")
    return label, float(value)


def parse_word(text: str) -> TimedWord:
    events = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ev = parse_event_line(raw, lineno)
        if ev is not None:
            events.append(ev)
            lines.append(lineno)
    try:
        return validate_word(events)
    except TimedModelError as exc:
        index = getattr(exc, "index", None)
        line = lines[index - 1] if index else None
        raise ValidationError(line, str(exc)) from None


def load_word(path: str | Path) -> TimedWord:
    return parse_word(Path(path).read_text())


def format_timestamp(x: float) -> str:
    text = f"{x:.9f}".rstrip("0").rstrip(".")
    return text or "0"


def write_word(events: Iterable[tuple[str, float]], out: TextIO) -> None:
    for label, tau in events:
        out.write(f"{label} {format_timestamp(tau)}\n")


# match output --------------------------------------------------------------

_NUM = r"(-?\d+(?:\.\d+)?|inf)"
_PAIR = rf"([\[(]){_NUM},{_NUM}([\])])"
_ZONE = re.compile(rf"^t:{_PAIR}\s+t':{_PAIR}\s+dt:{_PAIR}$")


def format_match_set(zones: Iterable[MatchZone]) -> str:
    return "".join(format_zone(z) + "\n" for z in zones)


def _triple(groups) -> tuple[float, bool, float, bool]:
    left, lo, hi, right = groups

    def num(x: str) -> float:
        return INF if x == "inf" else float(x)

    return (num(lo), left == "[", num(hi), right == "]")


def parse_match_line(line: str, lineno: int | None = None) -> MatchZone:
    found = _ZONE.match(line.strip())
    if not found:
        raise ParseError(lineno, f"bad match line {line.strip()!r}")
    g = found.groups()
    z = MatchZone.from_bounds(_triple(g[0:4]), _triple(g[4:8]), _triple(g[8:12]))
    if z is None:
        raise ValidationError(lineno, "empty zone")
    return z


def parse_match_set(text: str) -> list[MatchZone]:
    return [
        parse_match_line(raw, k)
        for k, raw in enumerate(text.splitlines(), start=1)
        if raw.strip()
    ]
