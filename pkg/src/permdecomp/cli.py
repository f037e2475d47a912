"""Command-line interface.

Subcommands: ``decompose`` (fast algorithm), ``oracle`` (brute-force
baseline), ``randgen`` (random instance files with a ground-truth sidecar),
``verify`` (compare two decomposition documents) and ``bench`` (timing
tables).

Exit codes are part of the contract: 0 ok, 1 parse error, 2 internal
invariant breach, 3 orbit cap exceeded, 4 retry budget exhausted, 5
decompositions not equivalent.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .apps import run_benchmark, summarize
from .decompose import InvariantViolation, decompose_handle
from .groupfile import (
    GroupFileError,
    check_document,
    decomposition_document,
    document_supports,
    dump_document,
    expected_sidecar,
    load_document,
    read_group_file,
    write_group_file,
)
from .groups import by_name
from .oracle import (
    OrbitCapExceeded,
    RandomInstanceSpec,
    RetryBudgetExhausted,
    brute_force_decompose,
    random_ddp_group,
    restriction_order,
    verify_decomposition,
)
from .perm import CycleFormatError, format_cycles
from .stabchain import GroupHandle, is_member

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVARIANT = 2
EXIT_CAP = 3
EXIT_RETRY = 4
EXIT_NOT_EQUIVALENT = 5


def _load_handle(path: str) -> GroupHandle:
    degree, gens = read_group_file(path)
    return GroupHandle.from_generators(gens, degree)


def _inner_group(name_or_path: str) -> GroupHandle:
    try:
        return by_name(name_or_path)
    except ValueError:
        pass
    return _load_handle(name_or_path)


def cmd_decompose(args) -> int:
    handle = _load_handle(args.input)
    result = decompose_handle(handle, verify=args.check)
    doc = decomposition_document(result, method="fast")
    if args.check:
        check_document(doc, handle.order, handle.orbit_structure.support())
        if not verify_decomposition(handle, result.partition):
            raise InvariantViolation("decomposition rejected by the order-product check")
        for factor in result.factors:
            for g in handle.generators:
                if not is_member(factor.handle.chain, g.restrict(factor.support)):
                    raise InvariantViolation(
                        "factor membership violated: a generator restriction "
                        "is not in its factor")
    sys.stdout.write(dump_document(doc))
    return EXIT_OK


def cmd_oracle(args) -> int:
    handle = _load_handle(args.input)
    partition = brute_force_decompose(handle, cap=args.cap, pairs_first=args.pairs_first)
    factors = []
    for cell in partition.cells:
        support = sorted(p for j in cell for p in handle.orbit_structure.orbit(j))
        gens = []
        for g in handle.generators:
            r = g.restrict(support)
            if not r.is_identity():
                gens.append(r)
        order = restriction_order(handle, cell)
        factors.append({
            "orbits": list(cell),
            "support": support,
            "generators": sorted({format_cycles(g) for g in gens}),
            "order": str(order),
        })
    doc = {
        "format": "permdecomp-decomposition/1",
        "method": "oracle",
        "degree": handle.degree,
        "orbits": [list(o) for o in handle.orbit_structure.orbits],
        "fixed_points": list(handle.orbit_structure.fixed_points),
        "cells": [list(c) for c in partition.cells],
        "factors": factors,
        "whole_order": str(handle.order),
        "meta": {"tool": "permdecomp", "version": __version__, "rng": None, "seed": None},
    }
    sys.stdout.write(dump_document(doc))
    return EXIT_OK


def cmd_randgen(args) -> int:
    inner = _inner_group(args.inner)
    spec = RandomInstanceSpec(inner, args.r, args.s, args.seed)
    handle, expected = random_ddp_group(spec)
    comments = [
        f"random decomposable instance: inner={args.inner} r={args.r} s={args.s} seed={args.seed}",
        "rng: python-mersenne-twister",
    ]
    write_group_file(args.output, handle.degree, handle.generators, comments)
    supports = [[p for j in cell for p in handle.orbit_structure.orbit(j)]
                for cell in expected.cells]
    sidecar = expected_sidecar(expected, supports, handle.degree,
                               args.inner, args.r, args.s, args.seed)
    with open(args.output + ".expected.json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(sidecar, indent=2) + "\n")
    sys.stdout.write(f"wrote {args.output} (degree {handle.degree}, "
                     f"{len(handle.generators)} generators) and sidecar\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    left = load_document(args.left)
    right = load_document(args.right)
    if left["degree"] != right["degree"]:
        sys.stdout.write(f"not equivalent: degrees differ "
                         f"({left['degree']} vs {right['degree']})\n")
        return EXIT_NOT_EQUIVALENT
    lsup = document_supports(left)
    rsup = document_supports(right)
    if lsup == rsup:
        sys.stdout.write(f"equivalent: {len(lsup)} factor support(s) match\n")
        return EXIT_OK
    for sup in sorted(lsup - rsup, key=sorted):
        sys.stdout.write(f"only in {args.left}: {sorted(sup)}\n")
    for sup in sorted(rsup - lsup, key=sorted):
        sys.stdout.write(f"only in {args.right}: {sorted(sup)}\n")
    return EXIT_NOT_EQUIVALENT


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def cmd_bench(args) -> int:
    inner = _inner_group(args.inner)
    rows = []
    for r in _int_list(args.r):
        for s in _int_list(args.s):
            spec = RandomInstanceSpec(inner, r, s, args.seed)
            records = run_benchmark(spec, args.task, args.reps, args.time_limit)
            summary = summarize(records)
            summary.update({"inner": args.inner, "r": r, "s": s})
            rows.append(summary)
    if args.json:
        for row in rows:
            sys.stdout.write(json.dumps(row) + "\n")
        return EXIT_OK
    whole_label = "oracle" if args.task == "decompose" else "whole group"
    fast_label = "decomposition" if args.task == "decompose" else "decomposed"
    sys.stdout.write(f"task: {args.task}; medians in seconds over {args.reps} rep(s); "
                     f"# = completed\n")
    header = f"{'inner':>10} {'r':>3} {'s':>3} | {whole_label:>12} {'#':>2} | {fast_label:>13} {'#':>2}"
    per_factor = any("per_factor" in row for row in rows)
    if per_factor:
        header += f" | {'per-factor':>10} {'#':>2}"
    sys.stdout.write(header + "\n")
    for row in rows:
        whole = row["whole"]
        dec = row["decomposition"]
        med = "N/A" if whole["median"] is None else f"{whole['median']:.3f}"
        line = (f"{row['inner']:>10} {row['r']:>3} {row['s']:>3} | "
                f"{med:>12} {whole['completed']:>2} | "
                f"{dec['median']:>13.3f} {row['reps']:>2}")
        if "per_factor" in row:
            pf = row["per_factor"]
            pf_med = "N/A" if pf["median"] is None else f"{pf['median']:.3f}"
            line += f" | {pf_med:>10} {pf['completed']:>2}"
        sys.stdout.write(line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permdecomp",
        description="finest disjoint direct product decomposition of permutation groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a group file (fast algorithm)")
    p.add_argument("input", help="group file")
    p.add_argument("--check", action="store_true",
                   help="additionally verify the structural laws of the output")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("oracle", help="decompose by brute force (baseline)")
    p.add_argument("input", help="group file")
    p.add_argument("--cap", type=int, default=12, help="maximum orbit count (default 12)")
    p.add_argument("--pairs-first", action="store_true",
                   help="glue indecomposable orbit pairs before the bipartition search")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("randgen", help="generate a random decomposable instance")
    p.add_argument("--inner", required=True,
                   help="inner transitive group: C<n>, D<order>, A<n>, S<n>, a bundled "
                        "name (W2222, W2C8) or a group file path")
    p.add_argument("--r", type=int, required=True, help="number of factors")
    p.add_argument("--s", type=int, required=True, help="orbits per factor")
    p.add_argument("--seed", type=int, default=1, help="rng seed (default 1)")
    p.add_argument("output", help="output group file; a .expected.json sidecar is written too")
    p.set_defaults(fn=cmd_randgen)

    p = sub.add_parser("verify", help="compare two decomposition documents")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="time whole-group vs decomposed computations")
    p.add_argument("--task", choices=("derived", "classes", "decompose"), required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--r", required=True, help="comma-separated list, e.g. 4,6,8")
    p.add_argument("--s", required=True, help="comma-separated list")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--time-limit", type=float, default=60.0,
                   help="seconds per measured computation (default 60)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true", help="one JSON row per line")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GroupFileError, CycleFormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except OrbitCapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except RetryBudgetExhausted as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RETRY


def console_main() -> None:
    raise SystemExit(main())
