"""Bundled reference scheme: 11 servers, 5 users, 12 subfunctions over GF(3).

The demand below, planned against the ternary Golay parity-check matrix,
is the canonical worked instance for this planner: because the code is
perfect, coset leaders up to the packing radius are unique, so the encoding
matrix the planner must produce is pinned down entry for entry.  The
expected encoding matrix, job sets, audiences, and both costs are frozen
here so the whole pipeline can be checked without any external input.
"""

from __future__ import annotations

from .codes import golay_ternary
from .fieldmat import FieldMatrix, mat_mul, row_weights, total_weight
from .planner import DemandMatrix, plan

REFERENCE_Q = 3

_F_ROWS = (
    (2, 1, 1, 1, 1, 1, 1, 1, 2, 1, 2, 0),
    (1, 0, 0, 2, 2, 2, 0, 1, 1, 1, 0, 1),
    (1, 2, 1, 0, 1, 0, 2, 1, 2, 0, 1, 1),
    (0, 2, 0, 2, 0, 1, 2, 1, 0, 1, 2, 1),
    (0, 0, 0, 1, 1, 2, 2, 0, 1, 1, 1, 2),
)

_E_ROWS = (
    (2, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0),
    (0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0),
    (0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 2),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 2, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2),
    (0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 0, 0),
)

REFERENCE_JOBS = (
    (1, 8, 10),
    (2, 6),
    (5, 9),
    (4,),
    (7, 11),
    (1, 6, 12),
    (3,),
    (2,),
    (3, 10),
    (7, 12),
    (5, 8),
)

REFERENCE_AUDIENCES = (
    (1, 2, 3, 4, 5),
    (1, 2, 3, 4),
    (1, 2, 3, 5),
    (1, 2, 4, 5),
    (1, 3, 4, 5),
    (2, 3, 4, 5),
    (1,),
    (2,),
    (3,),
    (4,),
    (5,),
)

REFERENCE_TOTAL_COST = 21
REFERENCE_MAX_LOAD = 3


def reference_demand() -> DemandMatrix:
    return DemandMatrix(FieldMatrix(REFERENCE_Q, _F_ROWS))


def reference_encoding() -> FieldMatrix:
    return FieldMatrix(REFERENCE_Q, _E_ROWS)


def run_reference_check(*, corrupt: bool = False) -> list[tuple[str, bool]]:
    """Plan the reference demand and compare every artifact to the frozen ones.

    Returns (assertion name, ok) pairs, one per check.  With corrupt=True a
    single entry of the expected encoding matrix is flipped first, which
    must make the comparison fail; it exists so the harness itself can be
    sanity-checked.
    """
    code = golay_ternary()
    demand = reference_demand()
    scheme = plan(demand, code)

    expected_e = reference_encoding()
    if corrupt:
        flipped = expected_e.data.copy()
        flipped[0, 0] = (flipped[0, 0] + 1) % REFERENCE_Q
        expected_e = FieldMatrix(REFERENCE_Q, flipped)

    checks = [
        ("decoding matrix is the ternary Golay parity check", scheme.D == code.H),
        ("encoding matrix matches entry for entry", scheme.E == expected_e),
        ("product D E reproduces the demand", mat_mul(scheme.D, scheme.E) == demand.matrix),
        ("total computation cost is 21", scheme.total_cost == REFERENCE_TOTAL_COST),
        ("worst per-server load is 3", scheme.max_load == REFERENCE_MAX_LOAD),
        ("job sets match", scheme.jobs == REFERENCE_JOBS),
        ("audiences match", scheme.audiences == REFERENCE_AUDIENCES),
        (
            "costs re-derived from the encoding matrix agree",
            total_weight(scheme.E) == REFERENCE_TOTAL_COST
            and max(row_weights(scheme.E)) == REFERENCE_MAX_LOAD,
        ),
    ]
    return checks
