"""Linear codes from parity-check matrices, with exact combinatorial parameters.

A code here is always presented by a full-row-rank K x N parity-check
matrix H over GF(q); its parameters are computed exhaustively:

* minimum distance d -- minimum weight over all q^(N-K) non-zero codewords,
  enumerated from a null-space basis;
* packing radius tau = floor((d - 1) / 2);
* covering radius rho -- maximum coset-leader weight, read off the complete
  syndrome table;
* packing density -- the exact fraction of the ambient space covered by the
  disjoint radius-tau balls around codewords, kept as a Fraction so that
  "density equals one" is a decidable equality.

A code is Perfect when rho = tau (the balls tile the space), QuasiPerfect
when rho = tau + 1, and Other otherwise.

Built-in families: Hamming codes over any prime field, the two nontrivial
perfect Golay codes, repetition codes, and binary extended Hamming codes
(the canonical quasi-perfect family).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .budget import MAX_CODEWORDS, MAX_TABLE_ENTRIES, BudgetError
from .fieldmat import FieldMatrix, FieldSpec, field_inv, null_space, rank
from .syndrome import SyndromeTable, build_table

PERFECT = "Perfect"
QUASI_PERFECT = "QuasiPerfect"
OTHER = "Other"

# codewords processed per chunk while scanning for the minimum distance
_CHUNK = 1 << 15

# 5x11 parity-check matrix of the ternary Golay code, in the presentation
# used throughout this package (identity block on the right).
_GOLAY_TERNARY_ROWS = (
    (1, 1, 1, 2, 2, 0, 1, 0, 0, 0, 0),
    (1, 1, 2, 1, 0, 2, 0, 1, 0, 0, 0),
    (1, 2, 1, 0, 1, 2, 0, 0, 1, 0, 0),
    (1, 2, 0, 1, 2, 1, 0, 0, 0, 1, 0),
    (1, 0, 2, 2, 1, 1, 0, 0, 0, 0, 1),
)

# generator polynomial of the [23,12,7] binary Golay code,
# 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11, low degree first
_GOLAY_BINARY_GEN = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)


def ball_volume(q: int, n: int, r: int) -> int:
    """Number of vectors in GF(q)^n within Hamming distance r of a point.

    V_q(n, r) = sum_{i=0}^{r} C(n, i) (q-1)^i, in exact integer arithmetic.

    Raises:
        ValueError: if r is negative or exceeds n.
    """
    if r < 0 or r > n:
        raise ValueError(f"radius {r} outside [0, {n}]")
    return sum(comb(n, i) * (q - 1) ** i for i in range(r + 1))


@dataclass(frozen=True)
class LinearCode:
    """A linear code plus every parameter the cost bounds depend on.

    ``dimension`` is the code dimension N - K; ``packing_density`` is exact.
    The syndrome table used to obtain the covering radius is kept so that
    downstream planning never rebuilds it.
    """

    H: FieldMatrix
    length: int
    dimension: int
    min_distance: int
    packing_radius: int
    covering_radius: int
    packing_density: Fraction
    classification: str
    table: SyndromeTable = field(compare=False, repr=False)
    name: str = field(default="", compare=False)

    @property
    def q(self) -> int:
        return self.H.q

    @property
    def num_checks(self) -> int:
        """Number of parity checks K (rows of H)."""
        return self.H.rows


def classify(code: LinearCode) -> str:
    """Perfect / QuasiPerfect / Other from the stored radii."""
    return _classification(code.packing_radius, code.covering_radius)


def _classification(tau: int, rho: int) -> str:
    if rho == tau:
        return PERFECT
    if rho == tau + 1:
        return QUASI_PERFECT
    return OTHER


def _min_distance(h: FieldMatrix, max_codewords: int) -> int:
    """Minimum weight over all non-zero codewords, by null-space enumeration."""
    basis = null_space(h)
    k_dim = basis.rows
    if k_dim == 0:
        raise ValueError("code has dimension 0: no non-zero codewords")
    q = h.q
    total = q**k_dim
    if total > max_codewords:
        raise BudgetError(
            f"minimum distance needs q^(N-K) = {q}^{k_dim} = {total} codewords, "
            f"over the limit of {max_codewords}"
        )
    powers = q ** np.arange(k_dim, dtype=np.int64)
    best = h.cols + 1
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        ids = np.arange(start, stop, dtype=np.int64)
        coeffs = (ids[:, None] // powers) % q
        words = (coeffs @ basis.data) % q
        w = np.count_nonzero(words, axis=1)
        if start == 0:
            w = w[1:]  # skip the zero codeword
        if w.size:
            best = min(best, int(w.min()))
    return best


def from_parity_check(
    h: FieldMatrix,
    *,
    max_codewords: int = MAX_CODEWORDS,
    max_table_entries: int = MAX_TABLE_ENTRIES,
    name: str = "",
) -> LinearCode:
    """Analyze the code whose parity-check matrix is h.

    Raises:
        ValueError: if h is rank deficient (or presents a dimension-0 code).
        BudgetError: if either enumeration exceeds its budget.
    """
    k, n = h.rows, h.cols
    if rank(h) != k:
        raise ValueError("parity-check not full rank")
    d = _min_distance(h, max_codewords)
    tau = (d - 1) // 2
    table = build_table(h, max_table_entries=max_table_entries)
    rho = table.rho_observed
    density = Fraction(h.q ** (n - k) * ball_volume(h.q, n, tau), h.q**n)
    if density > 1:
        raise AssertionError("packing density above 1: parameter bug")
    return LinearCode(
        H=h,
        length=n,
        dimension=n - k,
        min_distance=d,
        packing_radius=tau,
        covering_radius=rho,
        packing_density=density,
        classification=_classification(tau, rho),
        table=table,
        name=name or f"[{n},{n - k}] over GF({h.q})",
    )


def hamming_code(q: int, r: int, **kwargs) -> LinearCode:
    """Hamming code over GF(q) with r parity checks: N = (q^r - 1)/(q - 1).

    The columns of H are one representative per projective point,
    normalized to leading coefficient 1 and sorted lexicographically, which
    fixes the matrix uniquely.  For r >= 2 these codes are perfect with
    d = 3 (the r = 2 binary case degenerates to the [3,1] repetition code).
    """
    FieldSpec(q)
    if r < 2:
        raise ValueError(f"need at least 2 parity checks, got {r}")
    limit = kwargs.get("max_table_entries", MAX_TABLE_ENTRIES)
    if q**r > limit:
        raise BudgetError(
            f"hamming:{q}:{r} needs q^r = {q**r} syndromes, over the limit of {limit}"
        )
    points = set()
    for v in np.ndindex(*([q] * r)):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        inv = field_inv(lead, q)
        points.add(tuple((x * inv) % q for x in v))
    cols = sorted(points)
    h = FieldMatrix(q, np.array(cols, dtype=np.int64).T)
    return from_parity_check(h, name=f"hamming:{q}:{r}", **kwargs)


def extended_hamming(r: int, **kwargs) -> LinearCode:
    """Binary extended Hamming code [2^r, 2^r - r - 1]: d = 4, quasi-perfect.

    H extends the [2^r - 1, 2^r - r - 1] Hamming parity check with a zero
    column and an all-ones row (the overall parity bit).
    """
    if r < 2:
        raise ValueError(f"need at least 2 parity checks, got {r}")
    base = hamming_code(2, r).H
    n = base.cols + 1
    h = np.zeros((r + 1, n), dtype=np.int64)
    h[:r, : n - 1] = base.data
    h[r, :] = 1
    return from_parity_check(FieldMatrix(2, h), name=f"ext-hamming:{r}", **kwargs)


def repetition_code(q: int, n: int, **kwargs) -> LinearCode:
    """[n, 1] repetition code over GF(q), presented as H = [I | -1]."""
    FieldSpec(q)
    if n < 2:
        raise ValueError(f"repetition code needs length >= 2, got {n}")
    h = np.hstack([np.eye(n - 1, dtype=np.int64), np.full((n - 1, 1), q - 1, dtype=np.int64)])
    return from_parity_check(FieldMatrix(q, h), name=f"repetition:{q}:{n}", **kwargs)


def golay_ternary(**kwargs) -> LinearCode:
    """The perfect [11, 6, 5] ternary Golay code: tau = rho = 2."""
    h = FieldMatrix(3, np.array(_GOLAY_TERNARY_ROWS, dtype=np.int64))
    return from_parity_check(h, name="golay-ternary", **kwargs)


def golay_binary(**kwargs) -> LinearCode:
    """The perfect [23, 12, 7] binary Golay code: tau = rho = 3.

    Built from the cyclic generator polynomial: the 12 shifts of g(x) form
    a generator matrix, which is row reduced to systematic form [I | P];
    the parity check is then [P^T | I].
    """
    n, k_dim = 23, 12
    gen = np.zeros((k_dim, n), dtype=np.int64)
    for i in range(k_dim):
        gen[i, i : i + len(_GOLAY_BINARY_GEN)] = _GOLAY_BINARY_GEN
    # g(0) = 1, so the shifts are already in echelon form with pivots 0..11;
    # eliminating upwards yields [I | P] with no column swaps.
    for r in range(k_dim):
        for i in range(k_dim):
            if i != r and gen[i, r]:
                gen[i] = (gen[i] + gen[r]) % 2
    p = gen[:, k_dim:]
    h = np.hstack([p.T, np.eye(n - k_dim, dtype=np.int64)])
    return from_parity_check(FieldMatrix(2, h), name="golay-binary", **kwargs)
