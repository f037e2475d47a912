"""Orbits, deterministic Schreier-Sims stabilizer chains, sifting and
membership testing.

The chain builder takes a *prescribed candidate sequence* of base points and
only ever creates levels for candidates in that order.  This is what makes
orbit-ordered bases possible: with the candidate sequence equal to the
concatenation of the group's orbits (each sorted ascending, orbits ordered
by smallest element), the resulting base is grouped by orbit, so each orbit
prefix's pointwise stabilizer appears as a chain level.  Choosing base
points on demand cannot guarantee this: a residue discovered late may move
an earlier orbit after later-orbit base points already exist.

Redundant candidates (whose basic orbit stays a singleton) are dropped from
the published chain, so bases are always non-redundant.

After construction a chain is immutable; orders are plain Python ints and
therefore arbitrary precision.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .perm import Permutation


class OrbitStructure:
    """The orbits of a group, in a fixed processing order.

    Only orbits of size >= 2 are listed; points fixed by the whole group are
    reported separately.  The default order is by smallest orbit element.
    """

    __slots__ = ("degree", "orbits", "fixed_points", "_orbit_of", "_prefixes")

    def __init__(self, degree: int, orbits: Sequence[Sequence[int]], fixed_points: Iterable[int]):
        self.degree = degree
        self.orbits = tuple(tuple(sorted(o)) for o in orbits)
        self.fixed_points = tuple(sorted(fixed_points))
        orbit_of = {}
        for idx, orbit in enumerate(self.orbits, start=1):
            for p in orbit:
                orbit_of[p] = idx
        self._orbit_of = orbit_of
        # prefixes[i] = union of orbits 1..i as a set
        prefixes = [frozenset()]
        acc: set[int] = set()
        for orbit in self.orbits:
            acc.update(orbit)
            prefixes.append(frozenset(acc))
        self._prefixes = tuple(prefixes)

    @property
    def k(self) -> int:
        return len(self.orbits)

    def orbit(self, i: int) -> tuple[int, ...]:
        """Points of the i-th orbit (1-based index)."""
        return self.orbits[i - 1]

    def prefix(self, i: int) -> frozenset[int]:
        """The union of orbits 1..i."""
        return self._prefixes[i]

    def orbit_of_point(self, p: int) -> int | None:
        """1-based index of the orbit containing p, or None if p is fixed."""
        return self._orbit_of.get(p)

    def support(self) -> frozenset[int]:
        return self._prefixes[-1]

    def reordered(self, order: Sequence[int]) -> "OrbitStructure":
        """A copy with orbits processed in the given order.

        ``order`` is a permutation of 1..k: position i of the new structure
        holds old orbit ``order[i - 1]``.
        """
        if sorted(order) != list(range(1, self.k + 1)):
            raise ValueError(f"not a permutation of 1..{self.k}: {order!r}")
        return OrbitStructure(self.degree, [self.orbits[i - 1] for i in order], self.fixed_points)

    def __repr__(self) -> str:
        return f"OrbitStructure(degree={self.degree}, orbits={self.orbits}, fixed={self.fixed_points})"


def compute_orbits(generators: Sequence[Permutation], degree: int) -> OrbitStructure:
    """Orbits of the group generated by ``generators``, ordered by smallest
    element; fixed points are listed separately."""
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    seen = [False] * (degree + 1)
    orbits = []
    fixed = []
    for start in range(1, degree + 1):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for g in generators:
                q = g._img[p - 1] + 1
                if not seen[q]:
                    seen[q] = True
                    orbit.append(q)
                    frontier.append(q)
        if len(orbit) == 1:
            fixed.append(start)
        else:
            orbits.append(sorted(orbit))
    return OrbitStructure(degree, orbits, fixed)


class OrderBoundExceeded(RuntimeError):
    """Chain construction stopped early: the partial transversal product
    already exceeds the caller's bound, so the group is strictly larger."""


class TransversalLevel:
    """One level of a stabilizer chain.

    ``coset_reps`` maps each point q of the basic orbit to a representative
    r with base_point^r = q; the base point itself maps to the identity.
    """

    __slots__ = ("base_point", "coset_reps", "level_generators", "_inv0")

    def __init__(self, base_point: int, coset_reps: dict[int, Permutation],
                 level_generators: Sequence[Permutation] = ()):
        if coset_reps.get(base_point) is None or not coset_reps[base_point].is_identity():
            raise ValueError("coset_reps must map the base point to the identity")
        for q, r in coset_reps.items():
            if r.image(base_point) != q:
                raise ValueError(f"representative for {q} maps base point to {r.image(base_point)}")
        self.base_point = base_point
        self.coset_reps = dict(coset_reps)
        self.level_generators = tuple(level_generators)
        # 0-based image -> inverse representative, for the sift hot path
        self._inv0 = {q - 1: r.inverse() for q, r in coset_reps.items()}

    @property
    def basic_orbit(self) -> frozenset[int]:
        return frozenset(self.coset_reps)

    def __repr__(self) -> str:
        return f"TransversalLevel(base_point={self.base_point}, orbit_size={len(self.coset_reps)})"


class StabilizerChain:
    """A complete stabilizer chain: base, transversals, strong generators
    and the group order."""

    __slots__ = ("degree", "levels", "strong_generators", "order")

    def __init__(self, degree: int, levels: Sequence[TransversalLevel],
                 strong_generators: Sequence[Permutation]):
        self.degree = degree
        self.levels = tuple(levels)
        self.strong_generators = tuple(strong_generators)
        order = 1
        for level in self.levels:
            order *= len(level.coset_reps)
        self.order = order

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.base_point for level in self.levels)

    def __repr__(self) -> str:
        return f"StabilizerChain(degree={self.degree}, base={self.base}, order={self.order})"


class _Node:
    # builder-internal level for one prescribed candidate point
    __slots__ = ("p0", "gens", "reps", "inv", "tree_edge", "pts",
                 "checked_pts", "checked_gens", "exp_pts", "exp_gens")

    def __init__(self, p0: int):
        self.p0 = p0                      # 0-based point
        self.gens: list[Permutation] = []
        self.reps: dict[int, Permutation] = {}   # 0-based point -> rep
        # 0-based point -> inverse rep: padded translate table for degrees
        # <= 255, Permutation otherwise
        self.inv: dict[int, object] = {}
        self.tree_edge: dict[int, tuple[int, int]] = {}  # q -> (p, gen index)
        self.pts: list[int] = []          # orbit points in discovery order
        self.checked_pts = 0              # Schreier pairs (p, s) verified for
        self.checked_gens = 0             # p_idx < checked_pts and s_idx < checked_gens
        self.exp_pts = 0                  # orbit expansion frontier: pairs with
        self.exp_gens = 0                 # p_idx < exp_pts, g_idx < exp_gens done


def _dedup_generators(generators: Iterable[Permutation]) -> list[Permutation]:
    out = []
    seen = set()
    for g in generators:
        if g.is_identity() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out


def build_chain(generators: Sequence[Permutation], degree: int,
                candidates: Sequence[int] | None = None,
                abort_above: int | None = None) -> StabilizerChain:
    """Deterministic Schreier-Sims over a prescribed base-candidate sequence.

    ``candidates`` defaults to 1..degree, which realizes the "smallest moved
    point" base policy.  Passing the concatenation of the group's orbits
    gives an orbit-ordered base (see :func:`orbit_ordered_candidates`).
    Candidates must cover the support of the group.

    With ``abort_above`` set, construction raises OrderBoundExceeded as soon
    as the partial transversal product (a lower bound on the group order)
    exceeds that value.  This turns "is the order larger than N" into a
    cheap test that usually skips the verification sweep entirely.
    """
    gens = _dedup_generators(generators)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    if candidates is None:
        candidates = range(1, degree + 1)
    cand0 = [c - 1 for c in candidates]
    if len(set(cand0)) != len(cand0):
        raise ValueError("duplicate base candidates")

    covered = set(cand0)
    for g in gens:
        for p in g.support():
            if p - 1 not in covered:
                raise ValueError(f"candidates do not cover moved point {p}")

    nodes = [_Node(c) for c in cand0]
    nnodes = len(nodes)
    strong: list[Permutation] = []
    identity = Permutation.identity(degree)
    # degree <= 255: permutations are bytes tables, so the whole sweep can
    # run on raw tables with bytes.translate, never allocating objects
    raw = type(identity._img) is bytes
    id_img = identity._img

    def first_moved_index(g: Permutation) -> int:
        img = g._img
        for i, c in enumerate(cand0):
            if img[c] != c:
                return i
        raise AssertionError("identity attached to the chain")

    def attach(g: Permutation, lo: int) -> int:
        hi = first_moved_index(g)
        for t in range(lo, hi + 1):
            nodes[t].gens.append(g)
        return hi

    def extend_orbit(node: _Node) -> None:
        # grow the basic orbit in place; discovery order is stable so the
        # checked-pair and expansion bookkeeping stays valid
        reps = node.reps
        inv = node.inv
        tree_edge = node.tree_edge
        pts = node.pts
        if not reps:
            reps[node.p0] = identity
            inv[node.p0] = identity._table() if raw else identity
            pts.append(node.p0)
        gens_local = node.gens
        ep, eg = node.exp_pts, node.exp_gens
        ngens = len(gens_local)
        if ep == len(pts) and eg == ngens:
            return
        # old points with new generators, then every point from the old
        # frontier on (including ones appended just below) with all gens
        for i in range(ep):
            p = pts[i]
            rp = reps[p]
            for gi in range(eg, ngens):
                g = gens_local[gi]
                q = g._img[p]
                if q not in reps:
                    rq = rp * g
                    reps[q] = rq
                    inv_q = rq.inverse()
                    inv[q] = inv_q._table() if raw else inv_q
                    tree_edge[q] = (p, gi)
                    pts.append(q)
        i = ep
        while i < len(pts):
            p = pts[i]
            rp = reps[p]
            for gi in range(ngens):
                g = gens_local[gi]
                q = g._img[p]
                if q not in reps:
                    rq = rp * g
                    reps[q] = rq
                    inv_q = rq.inverse()
                    inv[q] = inv_q._table() if raw else inv_q
                    tree_edge[q] = (p, gi)
                    pts.append(q)
            i += 1
        node.exp_pts = len(pts)
        node.exp_gens = ngens

    def strip_raw(img: bytes, start: int) -> tuple[bytes, int]:
        t = start
        while t < nnodes:
            node = nodes[t]
            p0 = node.p0
            q = img[p0]
            if q != p0:
                tbl = node.inv.get(q)
                if tbl is None:
                    return img, t
                img = img.translate(tbl)
            t += 1
        return img, nnodes

    def strip_obj(g: Permutation, start: int) -> tuple[Permutation, int]:
        t = start
        while t < nnodes:
            node = nodes[t]
            q = g._img[node.p0]
            if q != node.p0:
                inv = node.inv.get(q)
                if inv is None:
                    return g, t
                g = g * inv
            t += 1
        return g, nnodes

    for g in gens:
        strong.append(g)
        attach(g, 0)

    def check_bound() -> None:
        if abort_above is None:
            return
        product = 1
        for node in nodes:
            if node.pts:
                product *= len(node.pts)
        if product > abort_above:
            raise OrderBoundExceeded(f"partial order {product} exceeds {abort_above}")

    if abort_above is not None:
        # transversals alone often witness the bound, skipping the sweep
        for node in nodes:
            extend_orbit(node)
        check_bound()

    # verify levels bottom-up; on adding a residue at levels t+1..j, jump to
    # j and re-descend.  Only Schreier pairs not previously checked are
    # sifted, so the total work is bounded by the final orbit x gens counts.
    t = nnodes - 1
    while t >= 0:
        node = nodes[t]
        extend_orbit(node)
        if len(node.pts) == 1:
            # singleton orbit: every level-t generator fixes the point, so
            # the level inherits completeness from level t+1
            node.checked_pts = 1
            node.checked_gens = len(node.gens)
            t -= 1
            continue
        restart = None
        pts = node.pts
        gens_local = node.gens
        reps = node.reps
        inv = node.inv
        tree_edge = node.tree_edge
        while node.checked_pts < len(pts) or node.checked_gens < len(gens_local):
            np, ng = node.checked_pts, node.checked_gens
            npts, ngens = len(pts), len(gens_local)
            # pairs not yet checked: new points with all gens, then old
            # points with new gens.  Counters are committed only after a
            # clean pass; a restart re-enumerates from the old snapshot.
            pairs = [(p_i, g_i) for p_i in range(np, npts) for g_i in range(ngens)]
            pairs += [(p_i, g_i) for p_i in range(np) for g_i in range(ng, ngens)]
            for p_i, g_i in pairs:
                p = pts[p_i]
                s = gens_local[g_i]
                q = s._img[p]
                if tree_edge.get(q) == (p, g_i):
                    continue
                if raw:
                    prod = reps[p]._img.translate(s._table())
                    if prod == reps[q]._img:
                        continue
                    res_img, j = strip_raw(prod.translate(inv[q]), t + 1)
                    if res_img == id_img:
                        continue
                    residue = Permutation._make(res_img)
                else:
                    prod = reps[p] * s
                    if prod == reps[q]:
                        continue
                    residue, j = strip_obj(prod * inv[q], t + 1)
                    if residue.is_identity():
                        continue
                strong.append(residue)
                attach(residue, t + 1)
                for l in range(t + 1, j + 1):
                    extend_orbit(nodes[l])
                check_bound()
                restart = j
                break
            if restart is not None:
                break
            node.checked_pts = npts
            node.checked_gens = ngens
        if restart is not None:
            t = restart
            continue
        t -= 1

    levels = []
    for node in nodes:
        if len(node.pts) <= 1:
            continue
        reps = {q + 1: r for q, r in node.reps.items()}
        levels.append(TransversalLevel(node.p0 + 1, reps, tuple(node.gens)))
    return StabilizerChain(degree, levels, strong)


def orbit_ordered_candidates(structure: OrbitStructure) -> list[int]:
    """Base candidates realizing an orbit-ordered base: the concatenation of
    the orbits in processing order, each sorted ascending."""
    out = []
    for orbit in structure.orbits:
        out.extend(orbit)
    return out


def sift(chain: StabilizerChain, g: Permutation, start_level: int = 1) -> tuple[Permutation, int]:
    """Sift g through chain levels start_level..m.

    Returns ``(siftee, stop_level)``.  The siftee fixes the base points of
    levels start_level..stop_level-1 and satisfies g = siftee * h for some h
    in the level-start_level group.  ``stop_level == m + 1`` means the whole
    (partial) chain was consumed; otherwise the siftee's image of the
    stop-level base point lies outside that level's basic orbit.
    """
    if g.degree != chain.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {chain.degree}")
    m = len(chain.levels)
    if not 1 <= start_level <= m + 1:
        raise ValueError(f"start_level {start_level} out of range 1..{m + 1}")
    for t in range(start_level - 1, m):
        level = chain.levels[t]
        q = g._img[level.base_point - 1]
        if q != level.base_point - 1:
            inv = level._inv0.get(q)
            if inv is None:
                return g, t + 1
            g = g * inv
    return g, m + 1


def is_member(chain: StabilizerChain, g: Permutation) -> bool:
    """Membership test by sifting from the top of the chain."""
    if g.degree != chain.degree:
        return False
    siftee, stop = sift(chain, g)
    return stop == len(chain.levels) + 1 and siftee.is_identity()


def random_element(chain: StabilizerChain, rng: random.Random) -> Permutation:
    """A uniformly distributed element: the product of one uniformly chosen
    coset representative per level."""
    g = Permutation.identity(chain.degree)
    for level in reversed(chain.levels):
        reps = list(level.coset_reps.values())
        g = g * reps[rng.randrange(len(reps))]
    return g


class GroupHandle:
    """A permutation group with its orbit structure and an eagerly built
    orbit-ordered stabilizer chain.

    ``orbit_base_boundaries[i - 1]`` is the number j_i of base points lying
    in orbits 1..i, so chain level j_i + 1 is the pointwise stabilizer of
    the orbit prefix (union of orbits 1..i).

    Handles are immutable after construction and safe to share across
    threads; random sampling takes the rng explicitly so callers own any
    synchronization.
    """

    __slots__ = ("degree", "generators", "orbit_structure", "chain", "orbit_base_boundaries")

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 orbit_structure: OrbitStructure, chain: StabilizerChain):
        self.degree = degree
        self.generators = tuple(generators)
        self.orbit_structure = orbit_structure
        self.chain = chain
        boundaries = []
        base = chain.base
        pos = 0
        for i in range(1, orbit_structure.k + 1):
            prefix = orbit_structure.prefix(i)
            while pos < len(base) and base[pos] in prefix:
                pos += 1
            boundaries.append(pos)
        self.orbit_base_boundaries = tuple(boundaries)

    @classmethod
    def from_generators(cls, generators: Sequence[Permutation], degree: int,
                        orbit_order: Sequence[int] | None = None) -> "GroupHandle":
        """Build a handle with an orbit-ordered base.

        ``orbit_order`` optionally permutes the default smallest-element
        orbit ordering; see :meth:`OrbitStructure.reordered`.
        """
        gens = _dedup_generators(generators)
        structure = compute_orbits(gens, degree)
        if orbit_order is not None:
            structure = structure.reordered(orbit_order)
        chain = build_chain(gens, degree, orbit_ordered_candidates(structure))
        return cls(degree, gens, structure, chain)

    @property
    def order(self) -> int:
        return self.chain.order

    def is_member(self, g: Permutation) -> bool:
        return is_member(self.chain, g)

    def random_element(self, rng: random.Random) -> Permutation:
        return random_element(self.chain, rng)

    def __repr__(self) -> str:
        return (f"GroupHandle(degree={self.degree}, orbits={self.orbit_structure.k}, "
                f"order={self.order})")


def pointwise_stabilizer_level(handle: GroupHandle, i: int) -> int:
    """The chain level whose group is the pointwise stabilizer of the union
    of orbits 1..i.  i = 0 gives level 1 (the whole group)."""
    k = handle.orbit_structure.k
    if not 0 <= i <= k:
        raise ValueError(f"orbit prefix index {i} out of range 0..{k}")
    if i == 0:
        return 1
    return handle.orbit_base_boundaries[i - 1] + 1
