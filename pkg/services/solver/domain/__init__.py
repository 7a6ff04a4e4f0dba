"""Domain layer exports."""

from domain.fpt_solvers import (
    fpt_solve,
    fpt_solve_bsm,
    fpt_solve_gsm,
    fpt_solve_sesm,
    state_views,
)
from domain.gale_shapley import (
    lattice_extremes,
    man_optimal,
    stable_with_tiebreak,
    woman_optimal,
)
from domain.models import (
    Instance,
    LatticeExtremes,
    Matching,
    Method,
    Problem,
    Scores,
    SolveReport,
    SolveStats,
)
from domain.oracle import (
    StableSet,
    enumerate_stable_strict,
    enumerate_weakly_stable,
    oracle_optimum,
)
from domain.random_instances import random_instance
from domain.rotations import (
    Rotation,
    RotationStructure,
    build_rotation_structure,
    closure,
    eliminate,
    enumerate_closed_sets,
    is_closed,
    man_path,
    matching_for,
    rotation_graph,
)
from domain.stability import (
    check_matching,
    find_blocking_pair,
    is_stable,
    primal_graph,
    score,
)
from domain.tree_decomposition import (
    NiceTreeDecomposition,
    NodeKind,
    TreeDecomposition,
    heuristic_decomposition,
    make_nice,
    validate,
)
from domain.xp_solvers import (
    xp_solve,
    xp_solve_bsm,
    xp_solve_max_smt,
    xp_solve_min_smt,
    xp_solve_sesm,
)

__all__ = [
    "Instance",
    "LatticeExtremes",
    "Matching",
    "Method",
    "Problem",
    "Scores",
    "SolveReport",
    "SolveStats",
    "StableSet",
    "Rotation",
    "RotationStructure",
    "NiceTreeDecomposition",
    "NodeKind",
    "TreeDecomposition",
    "build_rotation_structure",
    "check_matching",
    "closure",
    "eliminate",
    "enumerate_closed_sets",
    "enumerate_stable_strict",
    "enumerate_weakly_stable",
    "find_blocking_pair",
    "fpt_solve",
    "fpt_solve_bsm",
    "fpt_solve_gsm",
    "fpt_solve_sesm",
    "heuristic_decomposition",
    "is_closed",
    "is_stable",
    "lattice_extremes",
    "make_nice",
    "man_optimal",
    "man_path",
    "matching_for",
    "oracle_optimum",
    "primal_graph",
    "random_instance",
    "rotation_graph",
    "score",
    "stable_with_tiebreak",
    "state_views",
    "validate",
    "woman_optimal",
    "xp_solve",
    "xp_solve_bsm",
    "xp_solve_max_smt",
    "xp_solve_min_smt",
    "xp_solve_sesm",
]
