"""Complete syndrome -> minimum-weight coset leader tables.

Given a full-row-rank parity-check matrix H (K x N over GF(q)), the table
maps every syndrome in GF(q)^K to a coset leader: a vector of minimum
Hamming weight among all x with H x = s.  Construction enumerates candidate
vectors in non-decreasing weight order -- weight 0, then every weight-1
pattern, then weight-2, and so on -- and keeps the first vector that reaches
each syndrome, stopping once all q^K syndromes are filled.  Within one
weight layer the order is lexicographic on (support positions, then values),
which makes the table fully deterministic.

Syndromes are indexed in mixed radix, little-endian: the first coordinate
is the least significant digit, so index(s) = sum_k s_k * q^k.

Cache file layout (all integers little-endian):

    bytes 0..7    magic b"COSETTB1"
    bytes 8..11   uint32 q
    bytes 12..15  uint32 K   (syndrome length / rows of H)
    bytes 16..19  uint32 N   (leader length / cols of H)
    byte  20      uint8 element size in bytes (1 if q <= 256 else 2)
    bytes 21..52  SHA-256 of the canonical text serialization of H
    bytes 53..    q^K * N packed residues, row-major by syndrome index

Loading rejects any file whose header or H hash does not match the matrix
it is being loaded for.
"""

from __future__ import annotations

import hashlib
import struct
from itertools import combinations, product

import numpy as np

from .budget import MAX_TABLE_ENTRIES, BudgetError
from .fieldmat import FieldMatrix, rank, serialize_matrix

_CACHE_MAGIC = b"COSETTB1"

# cap on (supports per batch) x (value tuples) during table construction
_BATCH_CELLS = 1 << 20


def syndrome_index(vec: np.ndarray, q: int) -> int:
    """Mixed-radix little-endian index of a syndrome vector."""
    vec = np.asarray(vec, dtype=np.int64) % q
    radix = q ** np.arange(vec.size, dtype=np.int64)
    return int(vec @ radix)


def index_to_syndrome(idx: int, q: int, k: int) -> np.ndarray:
    """Inverse of syndrome_index: digits of idx, least significant first."""
    out = np.empty(k, dtype=np.int64)
    for i in range(k):
        idx, out[i] = divmod(idx, q)
    return out


def column_syndrome_indices(m: FieldMatrix) -> np.ndarray:
    """Syndrome index of every column of m, as one vectorized pass."""
    radix = m.q ** np.arange(m.rows, dtype=np.int64)
    return radix @ m.data


def matrix_fingerprint(h: FieldMatrix) -> bytes:
    """SHA-256 of the canonical text serialization, used to key caches."""
    return hashlib.sha256(serialize_matrix(h).encode("ascii")).digest()


class SyndromeTable:
    """All q^K coset leaders for one parity-check matrix, ready for lookup.

    leaders[i] is the coset leader for the syndrome with index i;
    leader_weights[i] its Hamming weight.  rho_observed, the maximum leader
    weight, equals the covering radius of the code with parity-check H.
    """

    __slots__ = ("H", "leaders", "leader_weights", "rho_observed")

    def __init__(self, h: FieldMatrix, leaders: np.ndarray):
        leaders = np.asarray(leaders, dtype=np.int64)
        leaders.flags.writeable = False
        weights = np.count_nonzero(leaders, axis=1)
        weights.flags.writeable = False
        object.__setattr__(self, "H", h)
        object.__setattr__(self, "leaders", leaders)
        object.__setattr__(self, "leader_weights", weights)
        object.__setattr__(self, "rho_observed", int(weights.max()))

    def __setattr__(self, name, value):
        raise AttributeError("SyndromeTable is immutable")

    @property
    def q(self) -> int:
        return self.H.q

    @property
    def num_syndromes(self) -> int:
        return self.leaders.shape[0]

    def leader_for_index(self, idx: int) -> np.ndarray:
        return self.leaders[idx]


def _value_tuples(q: int, w: int) -> np.ndarray:
    """All length-w tuples over {1..q-1} as rows, in lexicographic order."""
    if w == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(1, q), repeat=w)), dtype=np.int64)


def build_table(h: FieldMatrix, *, max_table_entries: int = MAX_TABLE_ENTRIES) -> SyndromeTable:
    """Build the complete coset-leader table for parity-check matrix h.

    Requires h to have full row rank (so the syndrome map is onto) and
    q^K to fit within the table budget.

    Raises:
        ValueError: if h is rank deficient.
        BudgetError: if q^K exceeds max_table_entries.
    """
    q, k, n = h.q, h.rows, h.cols
    if rank(h) != k:
        raise ValueError("parity-check not full rank")
    total = q**k
    if total > max_table_entries:
        raise BudgetError(
            f"syndrome table needs q^K = {q}^{k} = {total} entries, "
            f"over the limit of {max_table_entries}"
        )

    radix = q ** np.arange(k, dtype=np.int64)
    cols = h.data.T  # (N, K): row p is the column of H at position p
    leaders = np.zeros((total, n), dtype=np.int64)
    filled = np.zeros(total, dtype=bool)
    filled[0] = True  # zero syndrome <- zero vector
    remaining = total - 1

    for w in range(1, n + 1):
        if remaining == 0:
            break
        values = _value_tuples(q, w)  # (nv, w)
        nv = values.shape[0]
        batch = max(1, _BATCH_CELLS // (nv * max(w, 1)))
        supports: list[tuple[int, ...]] = []
        combo_iter = combinations(range(n), w)
        done = False
        while not done and remaining:
            supports.clear()
            for supp in combo_iter:
                supports.append(supp)
                if len(supports) == batch:
                    break
            else:
                done = True
            if not supports:
                break
            sup = np.array(supports, dtype=np.int64)  # (ns, w)
            # syndromes of every (support, values) candidate: (ns, nv, K)
            syn = np.einsum("vw,swk->svk", values, cols[sup]) % q
            idx = syn.reshape(-1, k) @ radix  # flat, in (support, value) order
            fresh = np.nonzero(~filled[idx])[0]
            if fresh.size == 0:
                continue
            uniq, first = np.unique(idx[fresh], return_index=True)
            pos = fresh[first]
            si, vi = pos // nv, pos % nv
            leaders[uniq[:, None], sup[si]] = values[vi]
            filled[uniq] = True
            remaining -= uniq.size

    if remaining:
        raise AssertionError("syndrome map not onto despite full-rank H")
    return SyndromeTable(h, leaders)


def decode(table: SyndromeTable, s: FieldMatrix) -> FieldMatrix:
    """Coset leader for syndrome s, returned as an N x 1 column.

    Raises:
        ValueError: on field or dimension mismatch.
    """
    if s.q != table.q:
        raise ValueError(f"field mismatch: GF({s.q}) vs GF({table.q})")
    k = table.H.rows
    if s.rows == k and s.cols == 1:
        vec = s.data[:, 0]
    elif s.rows == 1 and s.cols == k:
        vec = s.data[0, :]
    else:
        raise ValueError(f"syndrome must have {k} entries, got {s.rows}x{s.cols}")
    leader = table.leader_for_index(syndrome_index(vec, table.q))
    return FieldMatrix(table.q, leader.reshape(-1, 1))


def leader_weight_histogram(table: SyndromeTable) -> dict[int, int]:
    """Count of coset leaders at each Hamming weight, over all q^K syndromes."""
    counts = np.bincount(table.leader_weights)
    return {w: int(c) for w, c in enumerate(counts) if c}


def save_table(table: SyndromeTable, path) -> None:
    """Write the binary cache format documented in the module docstring."""
    q = table.q
    elem = 1 if q <= 256 else 2
    dtype = np.uint8 if elem == 1 else "<u2"
    header = (
        _CACHE_MAGIC
        + struct.pack("<III", q, table.H.rows, table.H.cols)
        + bytes([elem])
        + matrix_fingerprint(table.H)
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(table.leaders.astype(dtype).tobytes())


def load_table(path, h: FieldMatrix) -> SyndromeTable:
    """Load a cached table, validating it belongs to h.

    Raises:
        ValueError: on a corrupt cache or one built for a different matrix.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 53 or blob[:8] != _CACHE_MAGIC:
        raise ValueError(f"not a coset table cache: {path}")
    q, k, n = struct.unpack("<III", blob[8:20])
    elem = blob[20]
    digest = blob[21:53]
    if (q, k, n) != (h.q, h.rows, h.cols):
        raise ValueError("stale table cache: dimensions do not match the matrix")
    if digest != matrix_fingerprint(h):
        raise ValueError("stale table cache: parity-check matrix has changed")
    dtype = np.uint8 if elem == 1 else "<u2"
    expected = q**k * n * elem
    body = blob[53:]
    if len(body) != expected:
        raise ValueError(f"truncated table cache: {len(body)} body bytes, expected {expected}")
    leaders = np.frombuffer(body, dtype=dtype).astype(np.int64).reshape(q**k, n)
    return SyndromeTable(h, leaders)
