"""Hardness-instance generators and their structural checks."""

from reductions.clique import (
    check_leader_form,
    clique_witness_matching,
    find_multicolored_clique,
    reduce_clique_to_bsm,
    reduce_clique_to_max_smt,
    reduce_clique_to_min_smt,
    reduce_clique_to_sesm,
)
from reductions.models import (
    AgentRole,
    CheckResult,
    CliqueInput,
    Predictions,
    ReductionKind,
    ReductionMetadata,
    ReductionOutput,
    SatInput,
    VerificationReport,
)
from reductions.sat import (
    base_matching,
    excellent_matchings,
    h_pi_arcs,
    is_excellent,
    is_good,
    legal_sets,
    matching_of,
    reduce_sat_to_bsm,
    reduce_sat_to_sesm,
    sat_rotation_families,
)
from reductions.verification import verify_reduction

__all__ = [
    "AgentRole",
    "CheckResult",
    "CliqueInput",
    "Predictions",
    "ReductionKind",
    "ReductionMetadata",
    "ReductionOutput",
    "SatInput",
    "VerificationReport",
    "check_leader_form",
    "clique_witness_matching",
    "find_multicolored_clique",
    "reduce_clique_to_bsm",
    "reduce_clique_to_max_smt",
    "reduce_clique_to_min_smt",
    "reduce_clique_to_sesm",
    "base_matching",
    "excellent_matchings",
    "h_pi_arcs",
    "is_excellent",
    "is_good",
    "legal_sets",
    "matching_of",
    "reduce_sat_to_bsm",
    "reduce_sat_to_sesm",
    "sat_rotation_families",
    "verify_reduction",
]
