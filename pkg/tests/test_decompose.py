import random

import pytest

from permdecomp import (
    GroupHandle,
    InvariantViolation,
    OrbitPartition,
    Permutation,
    SeparableSGS,
    build_chain,
    compute_N_generators,
    compute_orbits,
    ddpd_step,
    decompose,
    decompose_handle,
    find_cell,
    is_member,
    orbit_ordered_handle,
    parse_cycles,
    verify_separability,
)

from oracles import brute_finest_partition, closure, tab

RUNNING = ["(1,2,3)(7,9,8)(10,12,11)", "(4,5,6)(7,8,9)(10,11,12)",
           "(5,6)(8,9)(11,12)", "(7,8,9)(10,11,12)"]


def running_gens():
    return [parse_cycles(s, 12) for s in RUNNING]


def random_group(rng, degree, ngens):
    gens = []
    for _ in range(ngens):
        images = list(range(1, degree + 1))
        rng.shuffle(images)
        gens.append(Permutation(images))
    return gens


class TestOrbitOrderedHandle:
    def test_running_example(self):
        h = orbit_ordered_handle(running_gens(), 12)
        assert h.chain.base == (1, 4, 5, 7)
        assert h.orbit_base_boundaries == (1, 3, 4, 4)
        assert tuple(h.chain.strong_generators) == tuple(running_gens())

    def test_transitive_group(self):
        gens = [parse_cycles("(1,2,3,4,5)", 5), parse_cycles("(1,2)", 5)]
        h = orbit_ordered_handle(gens, 5)
        assert h.orbit_structure.k == 1
        assert set(h.chain.base) <= {1, 2, 3, 4, 5}
        assert h.order == 120

    def test_trivial_group(self):
        h = orbit_ordered_handle([], 6)
        assert h.orbit_structure.k == 0 and h.chain.base == () and h.order == 1


class TestComputeN:
    def test_running_example_level_two(self):
        h = orbit_ordered_handle(running_gens(), 12)
        n3 = compute_N_generators(h, 2)
        assert n3 and build_chain(n3, 12).order == 3
        assert all(g.support() <= {7, 8, 9} for g in n3)

    def test_running_example_level_three_trivial(self):
        h = orbit_ordered_handle(running_gens(), 12)
        assert compute_N_generators(h, 3) == []

    def test_full_direct_product_projects_everything(self):
        # S3 x S3 on disjoint points: the stabilizer of the first orbit
        # still projects onto the whole second constituent
        gens = [parse_cycles("(1,2,3)", 6), parse_cycles("(1,2)", 6),
                parse_cycles("(4,5,6)", 6), parse_cycles("(4,5)", 6)]
        h = orbit_ordered_handle(gens, 6)
        n2 = compute_N_generators(h, 1)
        assert build_chain(n2, 6).order == 6

    def test_index_range(self):
        h = orbit_ordered_handle(running_gens(), 12)
        with pytest.raises(ValueError):
            compute_N_generators(h, 4)


class TestFindCell:
    def test_x1_at_stage_two(self):
        h = orbit_ordered_handle(running_gens(), 12)
        p2 = OrbitPartition([[1], [2]])
        assert find_cell(running_gens()[0], p2, h.orbit_structure) == (1,)

    def test_x3_at_stage_two(self):
        h = orbit_ordered_handle(running_gens(), 12)
        p2 = OrbitPartition([[1], [2]])
        assert find_cell(running_gens()[2], p2, h.orbit_structure) == (2,)

    def test_x3_at_stage_three(self):
        h = orbit_ordered_handle(running_gens(), 12)
        p3 = OrbitPartition([[1], [2, 3]])
        assert find_cell(running_gens()[2], p3, h.orbit_structure, verify=True) == (2, 3)

    def test_prefix_fixing_element_rejected(self):
        h = orbit_ordered_handle(running_gens(), 12)
        p2 = OrbitPartition([[1], [2]])
        with pytest.raises(ValueError):
            find_cell(running_gens()[3], p2, h.orbit_structure)


class TestDdpdStep:
    def test_stage_one_splits_first_two_orbits(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        _, p2 = ddpd_step(h, 1, sgs, OrbitPartition.initial(), verify=True)
        assert p2 == OrbitPartition([[1], [2]])

    def test_stage_two_matches_walkthrough(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        sgs, p = ddpd_step(h, 1, sgs, OrbitPartition.initial())
        records = []
        sgs3, p3 = ddpd_step(h, 2, sgs, p, records_out=records, verify=True)
        assert p3 == OrbitPartition([[1], [2, 3]])
        expected_x3 = {parse_cycles(s, 12) for s in
                       ["(1,2,3)", "(4,5,6)", "(5,6)(8,9)(11,12)", "(7,8,9)(10,11,12)"]}
        assert set(sgs3.elements) == expected_x3
        moved = {str(r.original): r.next_orbit_moved for r in records}
        assert moved["(5,6)(8,9)(11,12)"] is True

    def test_stage_three_merges_last_orbit(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        p = OrbitPartition.initial()
        for i in (1, 2, 3):
            sgs, p = ddpd_step(h, i, sgs, p, verify=True)
        assert p == OrbitPartition([[1], [2, 3, 4]])

    def test_stage_mismatch_rejected(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        with pytest.raises(ValueError):
            ddpd_step(h, 2, sgs, OrbitPartition.initial())

    def test_each_step_keeps_a_strong_generating_set(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        p = OrbitPartition.initial()
        for i in (1, 2, 3):
            sgs, p = ddpd_step(h, i, sgs, p)
            assert verify_separability(sgs, p, h.orbit_structure)
            rebuilt = build_chain(list(sgs.elements), 12)
            assert rebuilt.order == h.order


class TestVerifySeparability:
    def test_original_set_two_separable(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(tuple(running_gens()), 2)
        assert verify_separability(sgs, OrbitPartition([[1], [2]]), h.orbit_structure)

    def test_original_set_not_three_separable(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(tuple(running_gens()), 3)
        assert not verify_separability(sgs, OrbitPartition([[1], [2, 3]]), h.orbit_structure)

    def test_single_cell_always_separable(self):
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(tuple(running_gens()), 1)
        assert verify_separability(sgs, OrbitPartition.initial(), h.orbit_structure)


class TestDecompose:
    def test_running_example(self):
        res = decompose(running_gens(), 12, verify=True)
        assert res.partition == OrbitPartition([[1], [2, 3, 4]])
        assert sorted(f.order for f in res.factors) == [3, 18]
        assert res.whole_order == 54
        small = next(f for f in res.factors if f.order == 3)
        assert small.support == (1, 2, 3)

    def test_disjoint_transpositions(self):
        gens = [parse_cycles("(1,2)", 4), parse_cycles("(3,4)", 4)]
        res = decompose(gens, 4)
        assert [f.order for f in res.factors] == [2, 2]

    def test_transitive_single_factor(self):
        gens = [parse_cycles("(1,2,3,4,5)", 5), parse_cycles("(1,2)", 5)]
        res = decompose(gens, 5)
        assert len(res.factors) == 1 and res.factors[0].order == 120

    def test_diagonal_indecomposable(self):
        res = decompose([parse_cycles("(1,2)(3,4)", 4)], 4)
        assert res.partition == OrbitPartition([[1, 2]])

    def test_trivial_group(self):
        res = decompose([], 5)
        assert res.factors == () and res.whole_order == 1
        assert res.fixed_points == (1, 2, 3, 4, 5)

    def test_matches_exhaustive_partition_on_small_groups(self):
        rng = random.Random(23)
        checked = 0
        while checked < 15:
            degree = rng.randint(5, 9)
            gens = random_group(rng, degree, rng.randint(1, 2))
            if closure([tab(g) for g in gens], degree, limit=400) is None:
                continue
            structure = compute_orbits(gens, degree)
            if structure.k < 2:
                continue
            res = decompose(gens, degree, verify=True)
            expected = brute_finest_partition([tab(g) for g in gens], degree,
                                              [list(o) for o in structure.orbits])
            assert [list(c) for c in res.partition.cells] == [list(c) for c in expected]
            checked += 1

    def test_factor_membership_of_restricted_generators(self):
        gens = running_gens()
        res = decompose(gens, 12)
        for factor in res.factors:
            for g in gens:
                assert is_member(factor.handle.chain, g.restrict(factor.support))

    def test_product_law_and_disjoint_supports(self):
        res = decompose(running_gens(), 12)
        product = 1
        seen = set()
        for f in res.factors:
            product *= f.order
            assert not (seen & set(f.support))
            seen |= set(f.support)
        assert product == res.whole_order
        assert seen == set(range(1, 13))

    def test_orbit_reordering_preserves_supports(self):
        gens = running_gens()
        base = decompose(gens, 12).supports()
        rng = random.Random(5)
        for _ in range(6):
            order = list(range(1, 5))
            rng.shuffle(order)
            assert decompose(gens, 12, orbit_order=order, verify=True).supports() == base

    def test_conjugation_maps_supports(self):
        gens = running_gens()
        base = decompose(gens, 12).supports()
        rng = random.Random(9)
        images = list(range(1, 13))
        rng.shuffle(images)
        s = Permutation(images)
        conj = decompose([g.conjugate(s) for g in gens], 12).supports()
        assert conj == frozenset(frozenset(s.image(p) for p in sup) for sup in base)

    def test_monotone_refinement(self):
        # cells not merged at a step survive verbatim into the next partition
        h = orbit_ordered_handle(running_gens(), 12)
        sgs = SeparableSGS(h.chain.strong_generators, 1)
        p = OrbitPartition.initial()
        for i in (1, 2, 3):
            nxt_sgs, nxt = ddpd_step(h, i, sgs, p)
            merged = next(c for c in nxt.cells if i + 1 in c)
            for cell in p.cells:
                assert cell in nxt.cells or set(cell) <= set(merged)
            sgs, p = nxt_sgs, nxt


class TestOrbitPartition:
    def test_canonical_form(self):
        p = OrbitPartition([[3, 2], [1]])
        assert p.cells == ((1,), (2, 3))

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            OrbitPartition([[1, 2], [2, 3]])

    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            OrbitPartition([[1], [3]])

    def test_cell_lookup(self):
        p = OrbitPartition([[1], [2, 3]])
        assert p.cell_of(3) == (2, 3) and p.max_index == 3
