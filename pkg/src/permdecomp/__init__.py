"""permdecomp: finest disjoint direct product decomposition of permutation
groups given by generators, in polynomial time, with a brute-force oracle,
a random instance generator and application demos."""

__version__ = "0.1.0"

from .perm import (
    CycleFormatError,
    Permutation,
    compose,
    format_cycles,
    identity,
    parse_cycles,
)
from .stabchain import (
    GroupHandle,
    OrbitStructure,
    StabilizerChain,
    TransversalLevel,
    build_chain,
    compute_orbits,
    is_member,
    orbit_ordered_candidates,
    pointwise_stabilizer_level,
    random_element,
    sift,
)
from .decompose import (
    DecompositionResult,
    DisjointSet,
    Factor,
    InvariantViolation,
    OrbitPartition,
    SeparableSGS,
    SifteeRecord,
    compute_N_generators,
    ddpd_step,
    decompose,
    decompose_handle,
    find_cell,
    orbit_ordered_handle,
    verify_separability,
)
from .oracle import (
    ComputationTimeout,
    EquivalenceReport,
    OrbitCapExceeded,
    RandomInstanceSpec,
    RetryBudgetExhausted,
    brute_force_decompose,
    decompositions_equivalent,
    is_ddp_indecomposable,
    make_subdirect,
    random_ddp_group,
    restriction_order,
    verify_decomposition,
)
from .apps import (
    BenchRecord,
    ClassCountReport,
    OrderCapExceeded,
    count_conjugacy_classes,
    count_conjugacy_classes_via_ddpd,
    derived_subgroup,
    derived_subgroup_via_ddpd,
    run_benchmark,
)
from .groups import alternating, by_name, cyclic, dihedral, symmetric

__all__ = [name for name in dir() if not name.startswith("_")]
