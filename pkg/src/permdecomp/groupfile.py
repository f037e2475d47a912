"""Text formats: group files and decomposition documents.

Group file grammar (UTF-8, LF or CRLF input, LF output)::

    # optional comments
    degree N
    gen <cycle notation>
    gen <cycle notation>
    ...

Decomposition documents are JSON objects with stable key order; group
orders are serialized as decimal strings so consumers need not assume any
integer width.
"""

from __future__ import annotations

import json
from typing import Sequence

from . import __version__
from .decompose import DecompositionResult, InvariantViolation, OrbitPartition
from .perm import CycleFormatError, Permutation, format_cycles, parse_cycles

DOCUMENT_FORMAT = "permdecomp-decomposition/1"
SIDECAR_FORMAT = "permdecomp-expected/1"


class GroupFileError(ValueError):
    """A group file or document failed to parse."""


def parse_group_text(text: str) -> tuple[int, list[Permutation]]:
    degree = None
    generators: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        keyword = fields[0]
        rest = fields[1] if len(fields) > 1 else ""
        if keyword == "degree":
            if degree is not None:
                raise GroupFileError(f"line {lineno}: duplicate degree line")
            try:
                degree = int(rest)
            except ValueError:
                raise GroupFileError(f"line {lineno}: bad degree {rest!r}") from None
            if degree < 1:
                raise GroupFileError(f"line {lineno}: degree must be positive")
        elif keyword == "gen":
            if degree is None:
                raise GroupFileError(f"line {lineno}: gen before degree")
            try:
                generators.append(parse_cycles(rest, degree))
            except CycleFormatError as exc:
                raise GroupFileError(f"line {lineno}: {exc}") from None
        else:
            raise GroupFileError(f"line {lineno}: unknown keyword {keyword!r}")
    if degree is None:
        raise GroupFileError("missing degree line")
    return degree, generators


def read_group_file(path: str) -> tuple[int, list[Permutation]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from None
    return parse_group_text(text)


def group_file_text(degree: int, generators: Sequence[Permutation],
                    comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"degree {degree}")
    for g in generators:
        lines.append(f"gen {format_cycles(g)}")
    return "\n".join(lines) + "\n"


def write_group_file(path: str, degree: int, generators: Sequence[Permutation],
                     comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(group_file_text(degree, generators, comments))


def decomposition_document(result: DecompositionResult, method: str,
                           seed: int | None = None) -> dict:
    """JSON-ready document for a decomposition result."""
    return {
        "format": DOCUMENT_FORMAT,
        "method": method,
        "degree": result.degree,
        "orbits": [list(o) for o in result.orbit_structure.orbits],
        "fixed_points": list(result.fixed_points),
        "cells": [list(c) for c in result.partition.cells],
        "factors": [
            {
                "orbits": list(f.orbit_indices),
                "support": list(f.support),
                "generators": [format_cycles(g) for g in f.generators],
                "order": str(f.order),
            }
            for f in result.factors
        ],
        "whole_order": str(result.whole_order),
        "meta": {
            "tool": "permdecomp",
            "version": __version__,
            "rng": None if seed is None else "python-mersenne-twister",
            "seed": seed,
        },
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "degree" not in doc:
        raise GroupFileError(f"{path}: not a decomposition document")
    return doc


def document_supports(doc: dict) -> frozenset[frozenset[int]]:
    try:
        return frozenset(frozenset(f["support"]) for f in doc["factors"])
    except (KeyError, TypeError) as exc:
        raise GroupFileError(f"document missing factor supports: {exc}") from None


def check_document(doc: dict, whole_order: int, group_support: frozenset[int]) -> None:
    """Validate the structural laws of a decomposition document: the factor
    order product equals the whole order and the factor supports partition
    the group support.  Raises InvariantViolation naming the violated law."""
    product = 1
    for f in doc["factors"]:
        product *= int(f["order"])
    if product != whole_order:
        raise InvariantViolation(
            f"product law violated: factor orders multiply to {product}, "
            f"group order is {whole_order}")
    seen: set[int] = set()
    for f in doc["factors"]:
        sup = set(f["support"])
        if seen & sup:
            raise InvariantViolation("disjoint-support law violated: overlapping factor supports")
        seen |= sup
    if seen != set(group_support):
        raise InvariantViolation(
            "disjoint-support law violated: supports do not cover the group support")


def expected_sidecar(partition: OrbitPartition, result_supports: Sequence[Sequence[int]],
                     degree: int, inner: str, r: int, s: int, seed: int) -> dict:
    return {
        "format": SIDECAR_FORMAT,
        "degree": degree,
        "inner": inner,
        "r": r,
        "s": s,
        "seed": seed,
        "cells": [list(c) for c in partition.cells],
        "supports": [sorted(sup) for sup in result_supports],
    }
