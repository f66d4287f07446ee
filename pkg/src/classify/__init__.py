"""Structural classification: freezing orders, change counts, fixed points, nilpotency and limits."""
from src.classify.changes import (
    ChangeProfile,
    Freezing,
    FreezingOrder,
    NotFreezing,
    StateChangeRelation,
    change_profile,
    check_freezing,
    state_change_relation,
)
from src.classify.debruijn import (
    ASSUMED_CONVERGENT,
    AtLeastTwo,
    DeBruijnGraph,
    ExactlyOneUniform,
    FixedPointCensus,
    MissingCertificateError,
    NilpotencyVerdict,
    Nilpotent,
    NoneFound,
    NotNilpotent,
    build_debruijn,
    census_fixed_points,
    decide_nilpotency_1d,
    is_nilpotent_bruteforce,
    periodic_limits,
    uniform_fixed_points,
)
from src.classify.limits import (
    GroupedAutomaton,
    LimitOracleError,
    group_cells,
    limit_segment_with_counts,
    oracle_change_counts,
)
from src.classify.spreading import NotSpreadingError, check_spreading, is_spreading, lift_spreading_product

__all__ = [
    "ChangeProfile",
    "Freezing",
    "FreezingOrder",
    "NotFreezing",
    "StateChangeRelation",
    "change_profile",
    "check_freezing",
    "state_change_relation",
    "ASSUMED_CONVERGENT",
    "AtLeastTwo",
    "DeBruijnGraph",
    "ExactlyOneUniform",
    "FixedPointCensus",
    "MissingCertificateError",
    "NilpotencyVerdict",
    "Nilpotent",
    "NoneFound",
    "NotNilpotent",
    "build_debruijn",
    "census_fixed_points",
    "decide_nilpotency_1d",
    "is_nilpotent_bruteforce",
    "periodic_limits",
    "uniform_fixed_points",
    "GroupedAutomaton",
    "LimitOracleError",
    "group_cells",
    "limit_segment_with_counts",
    "oracle_change_counts",
    "NotSpreadingError",
    "check_spreading",
    "is_spreading",
    "lift_spreading_product",
]
