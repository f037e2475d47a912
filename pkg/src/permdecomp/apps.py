"""Applications that exploit a disjoint direct product decomposition.

Two computations are provided with both a whole-group path and a decomposed
path: the derived subgroup (the derived subgroup of a product is the
product of the derived subgroups) and the number of conjugacy classes (the
class count of a product is the product of the class counts).  The
decomposed paths turn computations that are infeasible on the whole group
into small per-factor ones.

A small benchmark harness times the three phases (whole group,
decomposition, per-factor) over random instances.  Limits are cooperative:
enumerations carry an order cap and long loops check a deadline, and
whatever does not finish is recorded as incomplete rather than raising.
"""

from __future__ import annotations

import random
import resource
import time
from dataclasses import dataclass
from itertools import combinations
from statistics import median
from typing import Sequence

from .decompose import DecompositionResult, decompose_handle
from .oracle import (
    ComputationTimeout,
    OrbitCapExceeded,
    RandomInstanceSpec,
    brute_force_decompose,
    random_ddp_group,
)
from .perm import Permutation
from .stabchain import GroupHandle, StabilizerChain, is_member

DEFAULT_ORDER_CAP = 100_000


class OrderCapExceeded(RuntimeError):
    """The group is too large for exhaustive element enumeration; use the
    decomposed path instead."""


@dataclass(frozen=True)
class ClassCountReport:
    """Conjugacy class count, with per-factor counts when the decomposed
    path produced it."""

    count: int
    method: str  # "whole-group" or "per-factor-product"
    per_factor_counts: tuple[int, ...] | None = None


@dataclass(frozen=True)
class BenchRecord:
    """Timings for one benchmark instance, in seconds."""

    instance: str
    task: str
    whole_time: float | None
    whole_completed: bool
    decomposition_time: float
    factor_time: float | None
    factor_completed: bool
    peak_rss_kb: int


def _commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def derived_subgroup(handle: GroupHandle, deadline: float | None = None) -> GroupHandle:
    """The derived subgroup, as the normal closure of the commutators of
    all generator pairs.

    Deterministic closure: conjugate the current generators by the group's
    generators and add every non-member, rebuilding the chain until stable.
    Terminates because the subgroup order strictly increases.
    """
    gens: list[Permutation] = []
    seen: set[Permutation] = set()
    for a, b in combinations(handle.generators, 2):
        for c in (_commutator(a, b), _commutator(b, a)):
            if not c.is_identity() and c not in seen:
                seen.add(c)
                gens.append(c)
    if not gens:
        return GroupHandle.from_generators([], handle.degree)
    derived = GroupHandle.from_generators(gens, handle.degree)
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise ComputationTimeout("derived subgroup computation timed out")
        new = []
        for d in gens:
            for g in handle.generators:
                c = d.conjugate(g)
                if c not in seen and not is_member(derived.chain, c):
                    seen.add(c)
                    new.append(c)
        if not new:
            return derived
        gens.extend(new)
        derived = GroupHandle.from_generators(gens, handle.degree)


def derived_subgroup_via_ddpd(handle: GroupHandle,
                              result: DecompositionResult | None = None) -> GroupHandle:
    """Derived subgroup through the decomposition: the group generated by
    the union of the factors' derived generators."""
    if result is None:
        result = decompose_handle(handle)
    gens: list[Permutation] = []
    expected_order = 1
    for factor in result.factors:
        part = derived_subgroup(factor.handle)
        gens.extend(part.generators)
        expected_order *= part.order
    out = GroupHandle.from_generators(gens, handle.degree)
    if out.order != expected_order:
        raise RuntimeError("derived factor orders do not multiply to the closure order")
    return out


def iter_elements(chain: StabilizerChain):
    """Yield every group element once, as products of one coset
    representative per level."""
    levels = chain.levels

    def walk(t: int, acc: Permutation):
        if t < 0:
            yield acc
            return
        for rep in levels[t].coset_reps.values():
            yield from walk(t - 1, acc if rep.is_identity() else acc * rep)

    yield from walk(len(levels) - 1, Permutation.identity(chain.degree))


def count_conjugacy_classes(handle: GroupHandle, order_cap: int = DEFAULT_ORDER_CAP,
                            deadline: float | None = None) -> ClassCountReport:
    """Exact class count by enumerating all elements and partitioning them
    into conjugation orbits under the generators.

    Groups larger than ``order_cap`` raise OrderCapExceeded; that is the
    signal to switch to the decomposed path.
    """
    if handle.order > order_cap:
        raise OrderCapExceeded(f"order {handle.order} exceeds cap {order_cap}")
    conj_pairs = [(x.inverse(), x) for x in handle.generators]
    seen: set[Permutation] = set()
    count = 0
    processed = 0
    for g in iter_elements(handle.chain):
        processed += 1
        if deadline is not None and processed % 1024 == 0 and time.monotonic() > deadline:
            raise ComputationTimeout("class counting timed out")
        if g in seen:
            continue
        count += 1
        stack = [g]
        seen.add(g)
        while stack:
            h = stack.pop()
            for x_inv, x in conj_pairs:
                c = x_inv * h * x
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    return ClassCountReport(count, "whole-group")


def count_conjugacy_classes_via_ddpd(handle: GroupHandle,
                                     per_factor_cap: int = DEFAULT_ORDER_CAP,
                                     result: DecompositionResult | None = None) -> ClassCountReport:
    """Class count as the product of the per-factor counts.

    Only the factor orders need to stay within the enumeration cap; the
    whole group may be far too large to enumerate.
    """
    if result is None:
        result = decompose_handle(handle)
    counts = []
    for factor in result.factors:
        counts.append(count_conjugacy_classes(factor.handle, per_factor_cap).count)
    total = 1
    for c in counts:
        total *= c
    return ClassCountReport(total, "per-factor-product", tuple(counts))


def _timed(fn, deadline_seconds: float | None):
    """Run fn under a cooperative deadline; returns (seconds, completed)."""
    deadline = None if deadline_seconds is None else time.monotonic() + deadline_seconds
    start = time.perf_counter()
    try:
        fn(deadline)
    except (ComputationTimeout, OrderCapExceeded, OrbitCapExceeded):
        return time.perf_counter() - start, False
    return time.perf_counter() - start, True


def run_benchmark(spec: RandomInstanceSpec, task: str, repetitions: int,
                  time_limit: float | None = None,
                  order_cap: int = DEFAULT_ORDER_CAP) -> list[BenchRecord]:
    """Time one (inner, r, s) configuration over several fresh instances.

    Tasks: ``derived`` and ``classes`` compare the whole-group computation
    against decomposition plus per-factor computation; ``decompose``
    compares the brute-force baseline (as the whole-group column) against
    the fast decomposition.  Instances are derived deterministically from
    ``spec.seed``; timeouts and cap hits are recorded as incomplete.
    """
    if task not in ("derived", "classes", "decompose"):
        raise ValueError(f"unknown task {task!r}")
    records = []
    for rep in range(repetitions):
        inst_spec = RandomInstanceSpec(spec.inner_group, spec.r, spec.s,
                                       seed=spec.seed * 100_003 + rep)
        handle, _expected = random_ddp_group(inst_spec)
        label = f"r={spec.r} s={spec.s} seed={inst_spec.seed}"

        start = time.perf_counter()
        result = decompose_handle(handle)
        decomposition_time = time.perf_counter() - start

        if task == "decompose":
            whole_time, whole_ok = _timed(
                lambda dl: brute_force_decompose(handle, cap=max(12, spec.r * spec.s),
                                                 deadline=dl),
                time_limit)
            factor_time, factor_ok = None, True
        elif task == "derived":
            whole_time, whole_ok = _timed(lambda dl: derived_subgroup(handle, deadline=dl),
                                          time_limit)
            factor_time, factor_ok = _timed(
                lambda dl: derived_subgroup_via_ddpd(handle, result=result), time_limit)
        else:
            whole_time, whole_ok = _timed(
                lambda dl: count_conjugacy_classes(handle, order_cap, deadline=dl),
                time_limit)
            factor_time, factor_ok = _timed(
                lambda dl: count_conjugacy_classes_via_ddpd(handle, order_cap, result=result),
                time_limit)

        records.append(BenchRecord(
            instance=label,
            task=task,
            whole_time=whole_time,
            whole_completed=whole_ok,
            decomposition_time=decomposition_time,
            factor_time=factor_time,
            factor_completed=factor_ok,
            peak_rss_kb=resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
        ))
    return records


def summarize(records: Sequence[BenchRecord]) -> dict:
    """Median-and-completion summary of one benchmark row."""
    def column(times, flags):
        done = [t for t, ok in zip(times, flags) if ok]
        return {
            "median": round(median(done), 4) if done else None,
            "completed": sum(flags),
        }

    out = {
        "task": records[0].task if records else None,
        "reps": len(records),
        "whole": column([r.whole_time for r in records],
                        [r.whole_completed for r in records]),
        "decomposition": column([r.decomposition_time for r in records],
                                [True] * len(records)),
    }
    if records and records[0].factor_time is not None:
        out["per_factor"] = column([r.factor_time for r in records],
                                   [r.factor_completed for r in records])
    return out
