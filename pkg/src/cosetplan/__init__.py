"""Planner and verifier for multi-user coded computing schemes.

Factors a demand matrix F over GF(q) into a decoding matrix D (the
parity-check matrix of a chosen linear code) and an encoding matrix E whose
columns are coset leaders obtained by syndrome decoding, then measures the
scheme's computation costs, evaluates the closed-form bounds they obey, and
simulates the resulting three-phase execution end to end.
"""

from .budget import BudgetError
from .codes import (
    LinearCode,
    ball_volume,
    classify,
    extended_hamming,
    from_parity_check,
    golay_binary,
    golay_ternary,
    hamming_code,
    repetition_code,
)
from .fieldmat import (
    FieldMatrix,
    FieldSpec,
    field_add,
    field_inv,
    mat_mul,
    parse_matrix,
    rank,
    row_weights,
    serialize_matrix,
    total_weight,
    weight,
)
from .planner import (
    BoundReport,
    ComputingScheme,
    DemandMatrix,
    assemble_scheme,
    evaluate_bounds,
    max_load_upper_bound,
    maximal_basis_demand,
    maximal_basis_lower_bounds,
    plan,
    quasi_perfect_upper_bounds,
    total_cost_upper_bound,
)
from .sim import SimulationReport, TrialAggregate, delay_accounting, random_trials, run_once
from .syndrome import (
    SyndromeTable,
    build_table,
    decode,
    leader_weight_histogram,
    load_table,
    save_table,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "BoundReport",
    "ComputingScheme",
    "DemandMatrix",
    "FieldMatrix",
    "FieldSpec",
    "LinearCode",
    "SimulationReport",
    "SyndromeTable",
    "TrialAggregate",
    "assemble_scheme",
    "ball_volume",
    "build_table",
    "classify",
    "decode",
    "delay_accounting",
    "evaluate_bounds",
    "extended_hamming",
    "field_add",
    "field_inv",
    "from_parity_check",
    "golay_binary",
    "golay_ternary",
    "hamming_code",
    "leader_weight_histogram",
    "load_table",
    "mat_mul",
    "max_load_upper_bound",
    "maximal_basis_demand",
    "maximal_basis_lower_bounds",
    "parse_matrix",
    "plan",
    "quasi_perfect_upper_bounds",
    "random_trials",
    "rank",
    "repetition_code",
    "row_weights",
    "run_once",
    "save_table",
    "serialize_matrix",
    "total_cost_upper_bound",
    "total_weight",
    "weight",
]
