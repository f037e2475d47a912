"""Finest disjoint direct product decomposition of a permutation group.

A group H with orbits O_1..O_k is a subdirect product of its transitive
constituents H|_{O_1} x ... x H|_{O_k}.  This module computes the unique
finest partition of the orbits whose cells carry a direct product
decomposition of H with pairwise disjoint factor supports.

The computation iterates over orbit prefixes.  At step i it holds a strong
generating set (w.r.t. an orbit-ordered base) in which every element acting
on the first i orbits acts inside a single cell of the current partition
("i-separable").  Each such element is sifted by the pointwise stabilizer
of the first i orbits, reusing the tail of the stabilizer chain; whether
the siftee moves orbit i+1 decides, cell by cell, which cells must merge
with orbit i+1.  Quotient maps are never materialized: the siftee test is
the whole kernel test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .perm import Permutation
from .stabchain import (
    GroupHandle,
    OrbitStructure,
    pointwise_stabilizer_level,
    sift,
)


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; names the violated invariant."""


class DisjointSet:
    """Union-find over 1..n with path compression and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(1, len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


class OrbitPartition:
    """An unordered partition of the orbit indices 1..i into cells.

    Canonical form: cells sorted by smallest element, elements ascending.
    """

    __slots__ = ("cells", "_cell_of")

    def __init__(self, cells: Sequence[Sequence[int]]):
        canon = tuple(sorted(tuple(sorted(c)) for c in cells))
        seen: set[int] = set()
        for cell in canon:
            if not cell:
                raise ValueError("empty cell")
            for x in cell:
                if x in seen:
                    raise ValueError(f"orbit index {x} appears in two cells")
                seen.add(x)
        if seen and seen != set(range(1, max(seen) + 1)):
            raise ValueError(f"cells must cover 1..{max(seen)}: {canon}")
        self.cells = canon
        self._cell_of = {x: cell for cell in canon for x in cell}

    @classmethod
    def initial(cls) -> "OrbitPartition":
        return cls(((1,),))

    @classmethod
    def singletons(cls, k: int) -> "OrbitPartition":
        return cls(tuple((i,) for i in range(1, k + 1)))

    @property
    def max_index(self) -> int:
        return max((cell[-1] for cell in self.cells), default=0)

    def cell_of(self, orbit_index: int) -> tuple[int, ...]:
        return self._cell_of[orbit_index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrbitPartition):
            return NotImplemented
        return self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        inner = "|".join("{" + ",".join(map(str, c)) + "}" for c in self.cells)
        return f"<{inner}>"


@dataclass(frozen=True)
class SeparableSGS:
    """A strong generating set in which, up to the separability index i,
    every element with nontrivial action on the first i orbits acts inside
    exactly one cell of the current partition."""

    elements: tuple[Permutation, ...]
    separability_index: int


@dataclass(frozen=True)
class SifteeRecord:
    """One sifting event inside a decomposition step."""

    original: Permutation
    siftee: Permutation
    cell: tuple[int, ...]
    next_orbit_moved: bool


@dataclass(frozen=True)
class Factor:
    """One indecomposable factor of the decomposition."""

    orbit_indices: tuple[int, ...]
    support: tuple[int, ...]
    generators: tuple[Permutation, ...]
    order: int
    handle: GroupHandle = field(repr=False, compare=False)


@dataclass(frozen=True)
class DecompositionResult:
    degree: int
    partition: OrbitPartition
    factors: tuple[Factor, ...]
    fixed_points: tuple[int, ...]
    whole_order: int
    orbit_structure: OrbitStructure = field(repr=False, compare=False)

    def supports(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f.support) for f in self.factors)


def orbit_ordered_handle(generators: Sequence[Permutation], degree: int,
                         orbit_order: Sequence[int] | None = None) -> GroupHandle:
    """Group handle whose chain uses an orbit-ordered base."""
    return GroupHandle.from_generators(generators, degree, orbit_order)


def compute_N_generators(handle: GroupHandle, i: int) -> list[Permutation]:
    """Generators for the projection onto orbit i+1 of the pointwise
    stabilizer of orbits 1..i: the strong generators fixing that orbit
    prefix, restricted to orbit i+1."""
    k = handle.orbit_structure.k
    if not 1 <= i < k:
        raise ValueError(f"orbit prefix index {i} out of range 1..{k - 1}")
    level = pointwise_stabilizer_level(handle, i)
    if level > len(handle.chain.levels):
        return []
    omega = handle.orbit_structure.orbit(i + 1)
    out = []
    for x in handle.chain.levels[level - 1].level_generators:
        r = x.restrict(omega)
        if not r.is_identity():
            out.append(r)
    return out


def find_cell(x: Permutation, partition: OrbitPartition, structure: OrbitStructure,
              verify: bool = False) -> tuple[int, ...]:
    """The unique cell whose orbits contain the action of x on the first i
    orbits, where i is the partition's top index.

    Locates the first orbit j <= i that x moves; i-separability guarantees
    the cell is unique.  With ``verify`` set, all orbits are scanned and
    uniqueness is asserted.
    """
    i = partition.max_index
    first = None
    for j in range(1, i + 1):
        if x.moves_any(structure.orbit(j)):
            first = j
            break
    if first is None:
        raise ValueError("permutation fixes the whole orbit prefix")
    cell = partition.cell_of(first)
    if verify:
        touched = {partition.cell_of(j) for j in range(first, i + 1)
                   if x.moves_any(structure.orbit(j))}
        if touched != {cell}:
            raise InvariantViolation(
                f"separability breach: {x} touches cells {sorted(touched)}")
    return cell


def ddpd_step(handle: GroupHandle, i: int, sgs: SeparableSGS, partition: OrbitPartition,
              records_out: list[SifteeRecord] | None = None,
              verify: bool = False) -> tuple[SeparableSGS, OrbitPartition]:
    """One refinement step: from an i-separable SGS and the finest partition
    of orbits 1..i, produce the (i+1)-separable SGS and finest partition of
    orbits 1..i+1.

    Elements fixing the orbit prefix pass through unchanged; the rest are
    sifted by the prefix stabilizer (the chain tail), and a siftee moving
    orbit i+1 marks its cell for merging with {i+1}.
    """
    if sgs.separability_index != i or partition.max_index != i:
        raise ValueError("separability index and partition must both be at stage i")
    structure = handle.orbit_structure
    prefix = structure.prefix(i)
    next_orbit = structure.orbit(i + 1)
    start = pointwise_stabilizer_level(handle, i)
    marked: set[tuple[int, ...]] = set()
    new_elements = []
    for x in sgs.elements:
        # x outside the prefix stabilizer iff it moves a prefix point
        if x.moves_any(prefix):
            cell = find_cell(x, partition, structure, verify=verify)
            siftee, _ = sift(handle.chain, x, start)
            new_elements.append(siftee)
            moved = siftee.moves_any(next_orbit)
            if moved:
                marked.add(cell)
            if records_out is not None:
                records_out.append(SifteeRecord(x, siftee, cell, moved))
        else:
            new_elements.append(x)
    dsu = DisjointSet(i + 1)
    for cell in partition.cells:
        for j in cell[1:]:
            dsu.union(cell[0], j)
    for cell in marked:
        dsu.union(cell[0], i + 1)
    next_partition = OrbitPartition(dsu.groups())
    next_sgs = SeparableSGS(tuple(new_elements), i + 1)
    if verify and not verify_separability(next_sgs, next_partition, structure):
        raise InvariantViolation(f"SGS not {i + 1}-separable after step {i}")
    return next_sgs, next_partition


def verify_separability(sgs: SeparableSGS, partition: OrbitPartition,
                        structure: OrbitStructure) -> bool:
    """True iff every element with nontrivial action on the first i orbits
    touches exactly one cell of the partition."""
    i = sgs.separability_index
    if partition.max_index != i:
        raise ValueError("partition must cover exactly the separability range")
    for x in sgs.elements:
        touched = {partition.cell_of(j) for j in range(1, i + 1)
                   if x.moves_any(structure.orbit(j))}
        if len(touched) > 1:
            return False
    return True


def decompose_handle(handle: GroupHandle, verify: bool = False) -> DecompositionResult:
    """Finest disjoint direct product decomposition of an orbit-ordered
    group handle."""
    structure = handle.orbit_structure
    k = structure.k
    whole_order = handle.chain.order
    if k == 0:
        return DecompositionResult(handle.degree, OrbitPartition(()), (),
                                   structure.fixed_points, whole_order, structure)
    sgs = SeparableSGS(handle.chain.strong_generators, 1)
    partition = OrbitPartition.initial()
    for i in range(1, k):
        sgs, partition = ddpd_step(handle, i, sgs, partition, verify=verify)

    # the final SGS is separable: each nontrivial element acts inside one
    # cell, so grouping elements by cell yields the factor generators
    by_cell: dict[tuple[int, ...], list[Permutation]] = {cell: [] for cell in partition.cells}
    for x in sgs.elements:
        if x.is_identity():
            continue
        cell = find_cell(x, partition, structure, verify=verify)
        if verify:
            cell_support = {p for j in cell for p in structure.orbit(j)}
            if not x.support() <= cell_support:
                raise InvariantViolation(f"generator {x} leaves its cell support")
        by_cell[cell].append(x)

    factors = []
    order_product = 1
    for cell in partition.cells:
        support = tuple(p for j in cell for p in structure.orbit(j))
        gens = tuple(by_cell[cell])
        factor_handle = GroupHandle.from_generators(gens, handle.degree)
        factors.append(Factor(cell, tuple(sorted(support)), gens,
                              factor_handle.order, factor_handle))
        order_product *= factor_handle.order
    if order_product != whole_order:
        raise InvariantViolation(
            f"factor order product {order_product} != group order {whole_order}")
    return DecompositionResult(handle.degree, partition, tuple(factors),
                               structure.fixed_points, whole_order, structure)


def decompose(generators: Sequence[Permutation], degree: int,
              orbit_order: Sequence[int] | None = None,
              verify: bool = False) -> DecompositionResult:
    """Finest disjoint direct product decomposition of the group generated
    by ``generators`` inside the symmetric group on 1..degree.

    The factor supports partition the support of the group; the factor
    orders multiply to the group order; each factor admits no further
    decomposition with disjoint supports.  ``orbit_order`` overrides the
    default smallest-element orbit processing order (the result's support
    family does not depend on it).
    """
    handle = orbit_ordered_handle(generators, degree, orbit_order)
    return decompose_handle(handle, verify=verify)
