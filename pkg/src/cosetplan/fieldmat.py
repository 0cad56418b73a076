"""Exact dense linear algebra over prime fields GF(q).

Residues are plain machine integers in [0, q); matrices wrap a read-only
numpy array together with the modulus, so values from different fields can
never be combined silently.  Everything here is pure and immutable: every
operation returns a fresh matrix.

Text file format (one matrix per file):

    line 1:           "q rows cols"        (ASCII decimal, single spaces)
    lines 2..rows+1:  cols space-separated integers in [0, q)

with a trailing newline.  A JSON equivalent
``{"q": ..., "rows": ..., "cols": ..., "entries": [[...], ...]}`` is
supported via :func:`parse_matrix_json` / :func:`serialize_matrix_json`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_MODULUS = 2**16


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (ample for q <= 2^16)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A validated prime modulus q defining the field GF(q)."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise ValueError(f"modulus must be an integer, got {self.q!r}")
        if self.q > MAX_MODULUS:
            raise ValueError(f"modulus {self.q} exceeds supported maximum {MAX_MODULUS}")
        if not is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")


def _check_modulus(q: int) -> int:
    FieldSpec(q)
    return q


class FieldMatrix:
    """Immutable dense matrix over GF(q) with entries stored as residues.

    The backing array is int64 and marked read-only; ``rows * cols`` always
    equals the entry count and every entry e satisfies 0 <= e < q.
    """

    __slots__ = ("q", "data")

    def __init__(self, q: int, entries, *, reduce: bool = False):
        _check_modulus(q)
        data = np.array(entries, dtype=np.int64)
        if data.ndim != 2:
            raise ValueError(f"entries must be two-dimensional, got shape {data.shape}")
        if reduce:
            data %= q
        elif data.size and (data.min() < 0 or data.max() >= q):
            raise ValueError(f"entries out of range [0, {q})")
        data.flags.writeable = False
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @classmethod
    def zeros(cls, q: int, rows: int, cols: int) -> "FieldMatrix":
        return cls(q, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, q: int, n: int) -> "FieldMatrix":
        return cls(q, np.eye(n, dtype=np.int64))

    def column(self, j: int) -> "FieldMatrix":
        return FieldMatrix(self.q, self.data[:, j : j + 1])

    def row(self, i: int) -> "FieldMatrix":
        return FieldMatrix(self.q, self.data[i : i + 1, :])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.q == other.q and self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.q, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"FieldMatrix(q={self.q}, {self.rows}x{self.cols})"


def field_add(a: int, b: int, q: int) -> int:
    """Sum of two residues in GF(q)."""
    return (a + b) % q


def field_sub(a: int, b: int, q: int) -> int:
    """Difference of two residues in GF(q)."""
    return (a - b) % q


def field_mul(a: int, b: int, q: int) -> int:
    """Product of two residues in GF(q)."""
    return (a * b) % q


def field_inv(a: int, q: int) -> int:
    """Multiplicative inverse of a in GF(q), via Fermat exponentiation.

    Raises:
        ZeroDivisionError: for a = 0, which has no inverse.
    """
    if a % q == 0:
        raise ZeroDivisionError("no inverse of zero")
    return pow(a, q - 2, q)


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """Exact matrix product over GF(q).

    Raises:
        ValueError: on field or dimension mismatch.
    """
    if a.q != b.q:
        raise ValueError(f"field mismatch: GF({a.q}) vs GF({b.q})")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    return FieldMatrix(a.q, (a.data @ b.data) % a.q)


def mat_add(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    """Entrywise sum over GF(q)."""
    if a.q != b.q:
        raise ValueError(f"field mismatch: GF({a.q}) vs GF({b.q})")
    if a.data.shape != b.data.shape:
        raise ValueError(f"shape mismatch: {a.data.shape} vs {b.data.shape}")
    return FieldMatrix(a.q, (a.data + b.data) % a.q)


def weight(v: FieldMatrix) -> int:
    """Hamming weight of a vector (a one-row or one-column matrix)."""
    if v.rows != 1 and v.cols != 1:
        raise ValueError(f"expected a vector, got {v.rows}x{v.cols}")
    return int(np.count_nonzero(v.data))


def row_weights(m: FieldMatrix) -> list[int]:
    """Hamming weight of each row, in row order."""
    return [int(w) for w in np.count_nonzero(m.data, axis=1)]


def total_weight(m: FieldMatrix) -> int:
    """Number of non-zero entries in the whole matrix."""
    return int(np.count_nonzero(m.data))


def _row_reduce(data: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(q); returns (rref, pivot columns)."""
    m = data.copy() % q
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * field_inv(int(m[r, c]), q)) % q
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % q
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m: FieldMatrix) -> int:
    """Rank over GF(q) via row reduction."""
    _, pivots = _row_reduce(m.data, m.q)
    return len(pivots)


def null_space(m: FieldMatrix) -> FieldMatrix:
    """Basis of the right null space, one basis vector per row.

    The returned matrix has shape (cols - rank) x cols; it is empty
    (0 x cols) when m has full column rank.
    """
    rref, pivots = _row_reduce(m.data, m.q)
    q = m.q
    cols = m.cols
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-rref[r, f]) % q
    return FieldMatrix(q, basis)


def serialize_matrix(m: FieldMatrix) -> str:
    """Canonical text form: header "q rows cols", one line per row."""
    lines = [f"{m.q} {m.rows} {m.cols}"]
    for row in m.data:
        lines.append(" ".join(str(int(e)) for e in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, *, reduce: bool = False) -> FieldMatrix:
    """Parse the text matrix format; the exact inverse of serialize_matrix.

    Entries outside [0, q) are an error unless ``reduce`` is set, in which
    case they are reduced mod q.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError(f"malformed header {lines[0]!r}: expected 'q rows cols'")
    try:
        q, rows, cols = (int(tok) for tok in header)
    except ValueError:
        raise ValueError(f"malformed header {lines[0]!r}: non-integer field") from None
    if rows < 0 or cols < 0:
        raise ValueError("negative dimensions")
    _check_modulus(q)
    if len(lines) != rows + 1:
        raise ValueError(f"expected {rows} data lines, found {len(lines) - 1}")
    entries = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != cols:
            raise ValueError(f"expected {cols} entries per row, found {len(toks)}")
        try:
            entries.append([int(tok) for tok in toks])
        except ValueError:
            raise ValueError(f"non-integer entry in row {ln!r}") from None
    data = np.array(entries, dtype=np.int64).reshape(rows, cols)
    return FieldMatrix(q, data, reduce=reduce)


def serialize_matrix_json(m: FieldMatrix) -> str:
    doc = {"q": m.q, "rows": m.rows, "cols": m.cols, "entries": m.data.tolist()}
    return json.dumps(doc) + "\n"


def parse_matrix_json(text: str, *, reduce: bool = False) -> FieldMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON matrix: {exc}") from None
    for key in ("q", "rows", "cols", "entries"):
        if key not in doc:
            raise ValueError(f"JSON matrix missing key {key!r}")
    entries = np.array(doc["entries"], dtype=np.int64)
    if entries.size == 0:
        entries = entries.reshape(doc["rows"], doc["cols"])
    if entries.shape != (doc["rows"], doc["cols"]):
        raise ValueError(
            f"entries shape {entries.shape} does not match header "
            f"{doc['rows']}x{doc['cols']}"
        )
    return FieldMatrix(doc["q"], entries, reduce=reduce)
