"""Command-line entry points for batch computations.

Exit codes: 0 success (including "unknown" verdicts), 2 input error,
3 engine error, 4 cross-check mismatch.  All output is deterministic
for a fixed invocation; --jobs is accepted for interface stability but
evaluation is serial (results are identical by construction).
"""
from __future__ import annotations

import argparse
import json
import sys

from .quiver import QuiverError, parse_quiver
from .rep import Context, RepError
from .derived import DerivedError, derived_object
from .tilt import (
    InternalInconsistencyError,
    TiltError,
    apply_tilt_word,
    cross_check,
    dump_collection,
    parse_tilt_word,
    std_collection,
    tilt,
)
from .heartex import HeartExError, explore, export_graph
from .stab import ChargeError, StabError, make_stability, sigma_exceptional_check

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ENGINE = 3
EXIT_MISMATCH = 4


class InputError(ValueError):
    pass


def _load_context(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read quiver file: {exc}")
    try:
        q = parse_quiver(text)
    except QuiverError as exc:
        raise InputError(f"bad quiver file: {exc}")
    return Context(q)


def _parse_word(ctx, text):
    try:
        word = parse_tilt_word(text)
    except TiltError as exc:
        raise InputError(str(exc))
    for i, _ in word:
        if not (1 <= i <= ctx.quiver.mu):
            raise InputError(f"tilt index {i} out of range 1..{ctx.quiver.mu}")
    return word


def _parse_window(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise InputError(f"window must look like lo:hi, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise InputError(f"non-integer window bounds in {text!r}")


def _emit(out, payload, fmt):
    if fmt == "text":
        for item in payload.get("items", []):
            out.write(f"{item['label']}  class={item['class']}\n")
        for key, (p, d) in sorted(payload.get("degrees", {}).items()):
            out.write(f"p[{key}] = {p} (dim {d})\n")
    else:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_std(args, out):
    ctx = _load_context(args.quiver)
    try:
        c = std_collection(ctx)
    except QuiverError as exc:
        raise InputError(str(exc))
    _emit(out, dump_collection(ctx, c), args.format)
    return EXIT_OK


def cmd_tilt(args, out):
    ctx = _load_context(args.quiver)
    word = _parse_word(ctx, args.word)
    try:
        c = std_collection(ctx)
    except QuiverError as exc:
        raise InputError(str(exc))
    mismatches = []
    for i, direction in word:
        before = c
        c, step = tilt(ctx, c, i, direction)
        if args.check:
            mismatches.extend(cross_check(ctx, c, step, before))
    payload = dump_collection(ctx, c)
    if args.check:
        payload["mismatches"] = mismatches
    _emit(out, payload, args.format)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_explore(args, out):
    ctx = _load_context(args.quiver)
    try:
        c = std_collection(ctx)
    except QuiverError as exc:
        raise InputError(str(exc))
    window = _parse_window(args.window)
    try:
        g = explore(ctx, c, args.depth, window)
    except HeartExError as exc:
        raise InputError(str(exc))
    out.write(export_graph(g, args.format))
    return EXIT_OK


def _parse_charges(text):
    try:
        raw = json.loads(text)
        values = [complex(re, im) for re, im in raw]
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad charge list: {exc}")
    return values


def _load_collection(ctx, path, heart):
    if path is None:
        return [item.handle for item in heart.items]
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read collection file: {exc}")
    by_key = {ctx.registry.key(i): i for i in range(len(ctx.registry))}
    objs = []
    try:
        for item in raw["items"]:
            pairs = []
            for key, s in item["summands"]:
                if key not in by_key:
                    raise InputError(f"unknown indecomposable key {key!r}")
                pairs.append((s, by_key[key]))
            objs.append(derived_object(pairs))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed collection file: {exc}")
    return objs


def cmd_stab(args, out):
    ctx = _load_context(args.quiver)
    word = _parse_word(ctx, args.word)
    try:
        c = std_collection(ctx)
    except QuiverError as exc:
        raise InputError(str(exc))
    for i, direction in word:
        c, _ = tilt(ctx, c, i, direction)
    values = _parse_charges(args.charges)
    if len(values) != len(c):
        raise InputError(
            f"{len(values)} charges for a heart with {len(c)} simples"
        )
    try:
        s = make_stability(c, values)
    except ChargeError as exc:
        raise InputError(str(exc))
    objects = _load_collection(ctx, args.collection_file, c)
    verdict = sigma_exceptional_check(ctx, s, objects)
    out.write(json.dumps(verdict.as_json(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtilt",
        description="simple tilts, exchange graphs, and stability checks "
        "for acyclic quivers",
    )
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized subcommand options")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count (accepted; evaluation is serial)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("std", help="standard collection of a quiver")
    p.add_argument("quiver")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_std)

    p = sub.add_parser("tilt", help="apply a tilt word to the standard heart")
    p.add_argument("quiver")
    p.add_argument("word", help='tokens like "2+ 1-"')
    p.add_argument("--check", action="store_true",
                   help="cross-check every step against the exact oracle")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_tilt)

    p = sub.add_parser("explore", help="bounded exchange-graph exploration")
    p.add_argument("quiver")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--window", default="-1:2", help="shift window lo:hi")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("stab", help="sigma-exceptionality check on a heart")
    p.add_argument("quiver")
    p.add_argument("word", nargs="?", default="")
    p.add_argument("--charges", required=True,
                   help="JSON list of [re, im] pairs, one per simple")
    p.add_argument("--collection-file", default=None)
    p.set_defaults(func=cmd_stab)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalInconsistencyError,) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (TiltError, StabError, RepError, DerivedError, QuiverError) as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
