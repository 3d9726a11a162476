"""Timed pattern matching with FJS-type skip values."""

from .dbm import Dbm
from .matching import (
    CompiledPattern,
    MatchZone,
    brute_force_match,
    contains,
    equivalent,
    fjs_match,
    normalize,
    sol_constr,
)
from .online import BufferOverflow, OnlineMatcher, OutOfOrderEvent, online_match
from .skips import Precomputation, TimedSkipTables, compute_beta, compute_delta, precompute
from .timed import (
    Atom,
    Guard,
    TimedAutomaton,
    TimedWord,
    Transition,
    accepts,
    eval_clocks,
    reset_record,
    segment,
    validate_word,
)
from .zones import ZoneAutomaton, build_zone_automaton, timed_prefix_sets

__all__ = [
    "Atom",
    "BufferOverflow",
    "CompiledPattern",
    "Dbm",
    "Guard",
    "MatchZone",
    "OnlineMatcher",
    "OutOfOrderEvent",
    "Precomputation",
    "TimedAutomaton",
    "TimedSkipTables",
    "TimedWord",
    "Transition",
    "ZoneAutomaton",
    "accepts",
    "brute_force_match",
    "build_zone_automaton",
    "compute_beta",
    "compute_delta",
    "contains",
    "equivalent",
    "eval_clocks",
    "fjs_match",
    "normalize",
    "online_match",
    "precompute",
    "reset_record",
    "segment",
    "sol_constr",
    "timed_prefix_sets",
    "validate_word",
]
