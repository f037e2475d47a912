"""Permutations of the points 1..n, with cycle-notation parsing and formatting.

Conventions used throughout the package:

* Points are the integers 1..n, where n is the degree of the permutation.
* The image of a point p under g is written ``g.image(p)`` (p^g in the
  usual exponent notation).
* Composition is left to right: ``(g * h).image(p) == h.image(g.image(p))``,
  so p^(gh) = (p^g)^h.

Permutations are immutable and hashable, so they can be freely shared,
stored in sets and used as dictionary keys.

Internally the image table is stored 0-based, as ``bytes`` for degrees up
to 255 (composition is then a single ``bytes.translate`` call) and as a
tuple of ints for larger degrees.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence


class CycleFormatError(ValueError):
    """Raised when a cycle-notation string does not match the grammar."""


_PAD = bytes(256)

# after stripping whitespace: "()" alone, or one or more cycles of >= 2 points
_PERM_RE = re.compile(r"(\(\d+(?:,\d+)+\))+")
_CYCLE_RE = re.compile(r"\(([\d,]+)\)")


class Permutation:
    """A permutation of 1..degree, stored as an image table."""

    __slots__ = ("_img", "_tbl")

    def __init__(self, images: Sequence[int]):
        """Build a permutation from its 1-based image table.

        ``images[p - 1]`` is the image of point p.  The table must be a
        bijection on 1..len(images).
        """
        n = len(images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        zero_based = [p - 1 for p in images]
        if sorted(zero_based) != list(range(n)):
            raise ValueError(f"not a bijection on 1..{n}: {images!r}")
        self._img = bytes(zero_based) if n <= 255 else tuple(zero_based)
        self._tbl = None

    @classmethod
    def _make(cls, img) -> "Permutation":
        # trusted constructor for internal use: img is already a valid
        # 0-based table of the right type
        p = object.__new__(cls)
        p._img = img
        p._tbl = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be at least 1")
        if degree <= 255:
            return cls._make(bytes(range(degree)))
        return cls._make(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], degree: int) -> "Permutation":
        """Build a permutation from disjoint cycles of 1-based points."""
        if degree < 1:
            raise ValueError("degree must be at least 1")
        table = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for p in cycle:
                if not 1 <= p <= degree:
                    raise ValueError(f"point {p} out of range 1..{degree}")
                if p in seen:
                    raise ValueError(f"point {p} repeated; cycles must be disjoint")
                seen.add(p)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                table[a - 1] = b - 1
        if degree <= 255:
            return cls._make(bytes(table))
        return cls._make(tuple(table))

    @property
    def degree(self) -> int:
        return len(self._img)

    def image(self, p: int) -> int:
        """Return p^g, the image of point p (1-based)."""
        if not 1 <= p <= len(self._img):
            raise ValueError(f"point {p} out of range 1..{len(self._img)}")
        return self._img[p - 1] + 1

    def is_identity(self) -> bool:
        img = self._img
        if type(img) is bytes:
            return img == bytes(range(len(img)))
        return all(i == x for i, x in enumerate(img))

    def _table(self) -> bytes:
        tbl = self._tbl
        if tbl is None:
            tbl = self._tbl = self._img + _PAD[: 256 - len(self._img)]
        return tbl

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Left-to-right composition: apply self first, then other."""
        a = self._img
        b = other._img
        if len(a) != len(b):
            raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
        if type(a) is bytes:
            return Permutation._make(a.translate(other._table()))
        return Permutation._make(tuple(b[x] for x in a))

    def inverse(self) -> "Permutation":
        img = self._img
        n = len(img)
        if type(img) is bytes:
            inv = bytearray(n)
            for i, x in enumerate(img):
                inv[x] = i
            return Permutation._make(bytes(inv))
        inv = [0] * n
        for i, x in enumerate(img):
            inv[x] = i
        return Permutation._make(tuple(inv))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def conjugate(self, s: "Permutation") -> "Permutation":
        """Return s^-1 * self * s.

        The support of the result is the image of the support of self
        under s.
        """
        if len(self._img) != len(s._img):
            raise ValueError(f"degree mismatch: {len(self._img)} vs {len(s._img)}")
        return s.inverse() * self * s

    def support(self) -> frozenset[int]:
        """The set of points moved by this permutation (1-based)."""
        return frozenset(i + 1 for i, x in enumerate(self._img) if x != i)

    def moves_any(self, points: Iterable[int]) -> bool:
        img = self._img
        return any(img[p - 1] != p - 1 for p in points)

    def restrict(self, points: Iterable[int]) -> "Permutation":
        """The permutation agreeing with self on ``points`` and fixing
        everything else.

        ``points`` must be invariant under self; the degree is kept, so the
        result lives in the same symmetric group.
        """
        img = self._img
        n = len(img)
        keep = set(points)
        table = list(range(n))
        for p in keep:
            if not 1 <= p <= n:
                raise ValueError(f"point {p} out of range 1..{n}")
            q = img[p - 1] + 1
            if q not in keep:
                raise ValueError(f"point set not invariant: {p} maps to {q}")
            table[p - 1] = q - 1
        if n <= 255:
            return Permutation._make(bytes(table))
        return Permutation._make(tuple(table))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its smallest point, sorted
        by smallest moved point."""
        img = self._img
        n = len(img)
        seen = [False] * n
        out = []
        for i in range(n):
            if seen[i] or img[i] == i:
                continue
            cycle = [i + 1]
            seen[i] = True
            j = img[i]
            while j != i:
                seen[j] = True
                cycle.append(j + 1)
                j = img[j]
            out.append(tuple(cycle))
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation[{format_cycles(self)}, degree={len(self._img)}]"


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(g: Permutation, h: Permutation) -> Permutation:
    """p^(compose(g, h)) = (p^g)^h."""
    return g * h


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation like ``(1,2,3)(7,9,8)`` into a permutation.

    Grammar: ``perm := "()" | cycle+`` with ``cycle := "(" int ("," int)+ ")"``.
    Whitespace is ignored, points are positive base-10 integers, and cycles
    must be disjoint.  The identity is written ``()``.
    """
    stripped = re.sub(r"\s+", "", text)
    if stripped == "()":
        return Permutation.identity(degree)
    if not _PERM_RE.fullmatch(stripped):
        raise CycleFormatError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        points = [int(tok) for tok in body.split(",")]
        if any(p < 1 for p in points):
            raise CycleFormatError(f"points must be positive: {text!r}")
        cycles.append(points)
    try:
        return Permutation.from_cycles(cycles, degree)
    except ValueError as exc:
        raise CycleFormatError(str(exc)) from exc


def format_cycles(g: Permutation) -> str:
    """Canonical cycle string: cycles sorted by smallest moved point, each
    starting at its smallest point; the identity formats as ``()``."""
    cycles = g.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)
