"""Command line front end: ``tpm match|monitor|gen|bench|strmatch|nfamatch``."""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path

from . import formats
from .bench import ALGORITHMS, run_bench, write_csv
from .formats import ParseError, ValidationError
from .generators import PROFILES, generate
from .matching import brute_force_match, fjs_match, format_zone, normalize
from .online import BufferOverflow, OnlineMatcher, OutOfOrderEvent
from .skips import precompute
from .strmatch import fjs_string_match
from .timed import TimedModelError
from .untimed import NoAcceptedWord, brute_force_nfa_match, fjs_nfa_match

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_ORDER = 3
EXIT_OVERFLOW = 4


def resolve(path: str) -> Path:
    """Use ``path`` as given, falling back to the packaged ``fixtures/`` directory."""
    p = Path(path)
    if p.exists():
        return p
    packaged = resources.files("tpmatch") / "fixtures" / p.name
    if packaged.is_file():
        return Path(str(packaged))
    return p


def _read(path: str) -> str:
    try:
        return resolve(path).read_text()
    except OSError as exc:
        raise ParseError(None, f"cannot read {path}: {exc.strerror}") from None


def _fail(code: int, message: str) -> int:
    print(f"tpm: {message}", file=sys.stderr)
    return code


def cmd_match(args) -> int:
    A = formats.parse_pattern(_read(args.pattern))
    word = formats.parse_word(_read(args.word))
    pre = None
    if args.dump_skips or args.dump_zones or args.algorithm == "fjs":
        pre = precompute(A)
    if args.dump_zones:
        print(pre.zone_automaton.dump())
    if args.dump_skips:
        print(pre.dump())
    if args.algorithm == "fjs":
        zones = fjs_match(word, A, pre.tables)
    else:
        zones = brute_force_match(word, A)
    if not args.raw:
        zones = normalize(zones)
    sys.stdout.write(formats.format_match_set(zones))
    return EXIT_OK


def cmd_monitor(args) -> int:
    A = formats.parse_pattern(_read(args.pattern))

    def sink(z):
        # zones are printed as they are fixed, so only float noise is cleaned up
        z = z.rounded()
        if z is not None:
            print(format_zone(z), flush=True)

    matcher = OnlineMatcher(A, precompute(A), sink, max_buffer=args.max_buffer)
    for lineno, raw in enumerate(sys.stdin, start=1):
        event = formats.parse_event_line(raw, lineno)
        if event is None:
            continue
        matcher.feed(*event)
    matcher.close()
    return EXIT_OK


def cmd_gen(args) -> int:
    seed = int(os.environ["TPM_SEED"]) if os.environ.get("TPM_SEED") else args.seed
    formats.write_word(generate(args.profile, args.length, seed, args.rate), sys.stdout)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(float(x)) for x in text.split(",") if x.strip()]


def cmd_bench(args) -> int:
    A = formats.parse_pattern(_read(args.pattern))
    seed = int(os.environ["TPM_SEED"]) if os.environ.get("TPM_SEED") else args.seed
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            return _fail(EXIT_VALIDATION, f"unknown algorithm {a!r}")
    pre_s, rows = run_bench(
        A,
        _int_list(args.sizes),
        algorithms,
        args.repeats,
        profile=args.profile,
        seed=seed,
        rate=args.rate,
    )
    write_csv(pre_s, rows, sys.stdout)
    return EXIT_OK


def cmd_strmatch(args) -> int:
    trace: list[int] = []
    found = fjs_string_match(args.text, args.pattern, trace=trace)
    for i, j in sorted(found):
        print(f"{i} {j}")
    if args.trace:
        print("trace " + " ".join(map(str, trace)))
    return EXIT_OK


def cmd_nfamatch(args) -> int:
    A = formats.parse_nfa(_read(args.nfa))
    symbols = args.word.split() if args.split else list(args.word)
    if args.algorithm == "fjs":
        found = fjs_nfa_match(symbols, A)
    else:
        found = brute_force_nfa_match(symbols, A)
    for i, j in sorted(found):
        print(f"{i} {j}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpm", description="Timed pattern matching with FJS-type skipping.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="match a pattern against a word file")
    p.add_argument("pattern")
    p.add_argument("word")
    p.add_argument("--algorithm", choices=("fjs", "bruteforce"), default="fjs")
    p.add_argument("--dump-skips", action="store_true", help="print the skip tables first")
    p.add_argument("--dump-zones", action="store_true", help="print the zone automaton first")
    p.add_argument("--raw", action="store_true", help="print zones as found, without normalizing")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("monitor", help="match events read from stdin as they arrive")
    p.add_argument("pattern")
    p.add_argument("--max-buffer", type=int, default=None)
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("gen", help="generate a synthetic word")
    p.add_argument("profile", choices=PROFILES)
    p.add_argument("length", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate", type=float, default=1.0, help="exponential rate for exp-superposition")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time matchers on generated words, CSV on stdout")
    p.add_argument("pattern")
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--algorithms", default="fjs,bruteforce")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--profile", choices=PROFILES, default="simple-alternation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rate", type=float, default=1.0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("strmatch", help="string matching, for debugging")
    p.add_argument("pattern")
    p.add_argument("text")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_strmatch)

    p = sub.add_parser("nfamatch", help="untimed NFA matching, for debugging")
    p.add_argument("nfa")
    p.add_argument("word")
    p.add_argument("--split", action="store_true", help="symbols are whitespace separated")
    p.add_argument("--algorithm", choices=("fjs", "bruteforce"), default="fjs")
    p.set_defaults(func=cmd_nfamatch)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except OutOfOrderEvent as exc:
        return _fail(EXIT_ORDER, str(exc))
    except BufferOverflow as exc:
        return _fail(EXIT_OVERFLOW, str(exc))
    except (ValidationError, TimedModelError, NoAcceptedWord) as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
