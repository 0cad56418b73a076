"""Turn a demand matrix into a full computing scheme and evaluate cost bounds.

Planning fixes the decoding matrix D to a chosen code's parity-check matrix
and obtains each column of the computation-and-encoding matrix E by syndrome
decoding the corresponding column of the demand matrix F, so that D E = F
holds exactly and every E column has minimum possible weight for that D.

From E the scheme derives, per server n: the job set S_n (indices of the
subfunctions server n must evaluate, the support of row n of E) and, per the
columns of D, the audience T_n (users that receive server n's broadcast).
The two costs of interest are

* total_cost  -- cumulative number of subfunction evaluations across all
  servers, i.e. the number of non-zero entries of E;
* max_load    -- worst-case per-server job count, which under unit-cost
  evaluation is the computational delay of the whole scheme.

The bound calculators evaluate the closed-form upper bounds (valid for any
demand), the lower bounds that apply in the maximal-basis regime L = q^K,
and the strict upper bounds available for quasi-perfect codes.  All bound
arithmetic is exact (integers and Fractions); the term (1 - density) * q^K
is asserted to be integral and planning aborts if it is not, since that
would indicate a parameter bug upstream.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from .budget import MAX_TABLE_ENTRIES, BudgetError
from .codes import PERFECT, QUASI_PERFECT, LinearCode
from .fieldmat import FieldMatrix, mat_mul, row_weights, total_weight
from .syndrome import SyndromeTable, column_syndrome_indices


class DemandMatrix:
    """A K x L matrix of per-user combination coefficients, one column per
    basis subfunction demand profile.

    Columns must be pairwise distinct; pass allow_duplicate_columns=True to
    plan anyway (duplicate demands simply receive identical E columns), at
    the price of a warning.  A zero column is legitimate and required by the
    maximal-basis regime.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: FieldMatrix, *, allow_duplicate_columns: bool = False):
        distinct = np.unique(matrix.data, axis=1).shape[1]
        if distinct != matrix.cols:
            if not allow_duplicate_columns:
                raise ValueError(
                    f"demand matrix has {matrix.cols - distinct} duplicate column(s); "
                    "pass allow_duplicate_columns to plan anyway"
                )
            warnings.warn(
                "planning a demand matrix with duplicate columns: the duplicated "
                "demands will share identical encoding columns",
                stacklevel=2,
            )
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("DemandMatrix is immutable")

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def num_users(self) -> int:
        return self.matrix.rows

    @property
    def num_subfunctions(self) -> int:
        return self.matrix.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, DemandMatrix):
            return NotImplemented
        return self.matrix == other.matrix


@dataclass(frozen=True)
class ComputingScheme:
    """A complete plan: matrices, per-server assignments, and both costs.

    jobs[n] and audiences[n] are 1-based index tuples (subfunctions and
    users respectively), matching the numbering servers and users are
    normally described with.
    """

    demand: DemandMatrix
    D: FieldMatrix
    E: FieldMatrix
    jobs: tuple[tuple[int, ...], ...]
    audiences: tuple[tuple[int, ...], ...]
    total_cost: int
    max_load: int

    @property
    def num_servers(self) -> int:
        return self.D.cols

    @property
    def num_users(self) -> int:
        return self.D.rows

    @property
    def num_subfunctions(self) -> int:
        return self.E.cols


def assemble_scheme(demand: DemandMatrix, d: FieldMatrix, e: FieldMatrix) -> ComputingScheme:
    """Derive job sets, audiences, and costs from explicit D and E matrices.

    Used both by plan() on a freshly decoded E and to rebuild a scheme from
    a bundle on disk; validates the feasibility condition D E = F.

    Raises:
        ValueError: if the matrices are inconsistent or D E != F.
    """
    f = demand.matrix
    if mat_mul(d, e) != f:
        raise ValueError("matrices do not satisfy D E = F")
    jobs = tuple(tuple(int(j) + 1 for j in np.nonzero(row)[0]) for row in e.data)
    audiences = tuple(tuple(int(k) + 1 for k in np.nonzero(d.data[:, n])[0]) for n in range(d.cols))
    cost = total_weight(e)
    load = max(row_weights(e), default=0)
    # same quantities from the job sets; the two derivations must agree
    if cost != sum(len(s) for s in jobs) or load != max((len(s) for s in jobs), default=0):
        raise AssertionError("cost accounting mismatch between E and the job sets")
    return ComputingScheme(
        demand=demand,
        D=d,
        E=e,
        jobs=jobs,
        audiences=audiences,
        total_cost=cost,
        max_load=load,
    )


def plan(
    demand: DemandMatrix,
    code: LinearCode,
    table: Optional[SyndromeTable] = None,
) -> ComputingScheme:
    """Produce the scheme for the given demand using code's parity check as D.

    Every column of E is the coset leader of the corresponding demand
    column, looked up in the code's syndrome table (or an explicitly
    supplied one, e.g. loaded from a cache file).

    Raises:
        ValueError: on field or dimension mismatch, or a foreign table.
    """
    f = demand.matrix
    d = code.H
    if f.q != d.q:
        raise ValueError(f"field mismatch: demand over GF({f.q}), code over GF({d.q})")
    if f.rows != d.rows:
        raise ValueError(
            f"demand has {f.rows} users but the code provides {d.rows} parity checks; "
            "refusing to pad"
        )
    if table is None:
        table = code.table
    elif table.H != d:
        raise ValueError("supplied syndrome table was built for a different matrix")

    idx = column_syndrome_indices(f)
    e = FieldMatrix(f.q, table.leaders[idx].T)
    return assemble_scheme(demand, d, e)


def _uncovered_cosets(code: LinearCode) -> int:
    """(1 - density) * q^K as an exact integer; aborts if not integral."""
    value = (1 - code.packing_density) * Fraction(code.q**code.num_checks)
    if value.denominator != 1:
        raise AssertionError("(1 - density) * q^K is not an integer: parameter bug")
    return int(value)


def max_load_upper_bound(code: LinearCode, num_subfunctions: int) -> int:
    """Upper bound on the worst per-server load, for any demand with L columns.

    min{L, sum_{i=1}^{tau} C(N-1, i-1) (q-1)^i + (1 - density) q^K}.
    """
    n, q, tau = code.length, code.q, code.packing_radius
    covered = sum(comb(n - 1, i - 1) * (q - 1) ** i for i in range(1, tau + 1))
    return min(num_subfunctions, covered + _uncovered_cosets(code))


def total_cost_upper_bound(code: LinearCode, num_subfunctions: int) -> int:
    """Upper bound on the cumulative computation cost, for L-column demands.

    min{N L, sum_{i=1}^{tau} C(N, i) (q-1)^i i + (1 - density) q^K rho}.
    """
    n, q, tau = code.length, code.q, code.packing_radius
    covered = sum(comb(n, i) * (q - 1) ** i * i for i in range(1, tau + 1))
    return min(n * num_subfunctions, covered + _uncovered_cosets(code) * code.covering_radius)


def maximal_basis_lower_bounds(code: LinearCode) -> tuple[int, int]:
    """(max_load, total_cost) lower bounds in the maximal-basis regime L = q^K.

    Perfect codes meet both bounds with equality.
    """
    n, q, tau = code.length, code.q, code.packing_radius
    load = sum(comb(n - 1, i - 1) * (q - 1) ** i for i in range(1, tau + 1))
    cost = sum(comb(n, i) * (q - 1) ** i * i for i in range(1, tau + 1))
    return load, cost


def quasi_perfect_upper_bounds(code: LinearCode) -> tuple[int, int]:
    """(max_load, total_cost) strict upper bounds for quasi-perfect codes.

    Measured values must come out strictly below these.

    Raises:
        ValueError: if the code is not quasi-perfect.
    """
    if code.classification != QUASI_PERFECT:
        raise ValueError(f"code is {code.classification}, not {QUASI_PERFECT}")
    n, q, tau = code.length, code.q, code.packing_radius
    # the density inequality these bounds rest on, checked rather than assumed
    if _uncovered_cosets(code) >= comb(n, tau + 1) * (q - 1) ** (tau + 1):
        raise AssertionError("quasi-perfect density inequality fails for this code")
    load = sum(comb(n - 1, i - 1) * (q - 1) ** i for i in range(1, tau + 1))
    load += comb(n, tau + 1) * (q - 1) ** (tau + 1)
    cost = sum(comb(n, i) * (q - 1) ** i * i for i in range(1, tau + 2))
    return load, cost


def maximal_basis_demand(
    q: int, num_users: int, *, max_columns: int = MAX_TABLE_ENTRIES
) -> DemandMatrix:
    """The demand whose columns are all q^K vectors of GF(q)^K exactly once.

    Columns appear in mixed-radix ascending order (first coordinate least
    significant), matching syndrome indexing.
    """
    total = q**num_users
    if total > max_columns:
        raise BudgetError(
            f"maximal basis needs q^K = {q}^{num_users} = {total} columns, "
            f"over the limit of {max_columns}"
        )
    ids = np.arange(total, dtype=np.int64)
    powers = q ** np.arange(num_users, dtype=np.int64)
    cols = (ids[None, :] // powers[:, None]) % q
    return DemandMatrix(FieldMatrix(q, cols))


@dataclass(frozen=True)
class BoundReport:
    """Every bound applicable to one planned scheme, next to the measured costs.

    Lower bounds are present only in the maximal-basis regime L = q^K;
    quasi-perfect bounds only when the code is quasi-perfect.
    """

    packing_radius: int
    covering_radius: int
    packing_density: Fraction
    max_load_ub: int
    total_cost_ub: int
    measured_max_load: int
    measured_total_cost: int
    max_load_lb: Optional[int] = None
    total_cost_lb: Optional[int] = None
    qp_max_load_ub: Optional[int] = None
    qp_total_cost_ub: Optional[int] = None

    def to_json_dict(self) -> dict:
        """Flat dict with the wire field names used in scheme.json."""
        out = {
            "tau": self.packing_radius,
            "rho": self.covering_radius,
            "mu_tau": f"{self.packing_density.numerator}/{self.packing_density.denominator}",
            "lambda_ub": self.max_load_ub,
            "gamma_ub": self.total_cost_ub,
            "measured_lambda": self.measured_max_load,
            "measured_gamma": self.measured_total_cost,
        }
        if self.max_load_lb is not None:
            out["lambda_lb"] = self.max_load_lb
            out["gamma_lb"] = self.total_cost_lb
        if self.qp_max_load_ub is not None:
            out["qp_lambda_ub"] = self.qp_max_load_ub
            out["qp_gamma_ub"] = self.qp_total_cost_ub
        return out


def evaluate_bounds(code: LinearCode, scheme: ComputingScheme) -> BoundReport:
    """Bound report for a planned scheme, checking measured-vs-bound sanity.

    Raises:
        AssertionError: if a measured cost lands outside an applicable bound
            (impossible unless a calculator or the decoder is wrong).
    """
    num_l = scheme.num_subfunctions
    load_ub = max_load_upper_bound(code, num_l)
    cost_ub = total_cost_upper_bound(code, num_l)
    load_lb = cost_lb = None
    if num_l == code.q**code.num_checks:
        load_lb, cost_lb = maximal_basis_lower_bounds(code)
    qp_load = qp_cost = None
    if code.classification == QUASI_PERFECT:
        qp_load, qp_cost = quasi_perfect_upper_bounds(code)

    if scheme.max_load > load_ub or scheme.total_cost > cost_ub:
        raise AssertionError("measured cost exceeds its upper bound: calculator bug")
    if load_lb is not None and (scheme.max_load < load_lb or scheme.total_cost < cost_lb):
        raise AssertionError("measured cost below the maximal-basis lower bound")
    if qp_load is not None and not (scheme.max_load < qp_load and scheme.total_cost < qp_cost):
        raise AssertionError("quasi-perfect strict bound violated")
    return BoundReport(
        packing_radius=code.packing_radius,
        covering_radius=code.covering_radius,
        packing_density=code.packing_density,
        max_load_ub=load_ub,
        total_cost_ub=cost_ub,
        measured_max_load=scheme.max_load,
        measured_total_cost=scheme.total_cost,
        max_load_lb=load_lb,
        total_cost_lb=cost_lb,
        qp_max_load_ub=qp_load,
        qp_total_cost_ub=qp_cost,
    )
