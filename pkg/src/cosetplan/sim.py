"""Execute a planned scheme on concrete subfunction outputs, end to end.

A trial walks the three phases: every server evaluates exactly the
subfunctions in its job set and broadcasts one linear combination of the
results; every user combines the broadcasts it is an audience member of;
the harness then checks each user recovered its demanded combination.

Subfunction outputs are opaque field elements, supplied directly as a
vector or sampled uniformly.  Server reads go through an instrumented view
of that vector, and each server's observed read set is asserted against its
job set, so a scheme that secretly needs data outside its assignment fails
loudly rather than silently succeeding.

Randomness comes from numpy's default generator (PCG64) seeded explicitly,
so trial streams are reproducible across platforms and runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fieldmat import FieldMatrix, mat_mul
from .planner import ComputingScheme


class _InstrumentedFiles:
    """Read-only view of the subfunction outputs that logs every access."""

    def __init__(self, values):
        self._values = values
        self.reads: set[int] = set()

    def __getitem__(self, index: int) -> int:
        self.reads.add(index)
        return self._values[index]


@dataclass(frozen=True)
class SimulationReport:
    """Everything observable from one trial.

    delivered[k] lists the (server, broadcast value) pairs user k+1
    received; server_reads[n] is the 1-based set of subfunction indices
    server n+1 actually touched.
    """

    transmissions: FieldMatrix
    delivered: tuple[tuple[tuple[int, int], ...], ...]
    decoded: FieldMatrix
    expected: FieldMatrix
    passed: bool
    delay: int
    message_count: int
    server_reads: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TrialAggregate:
    """Summary of a batch of randomized trials of one scheme."""

    trials: int
    passes: int
    pass_rate: float
    delay: int
    message_count: int
    seed: int
    per_trial_passed: tuple[bool, ...]


def run_once(scheme: ComputingScheme, w: FieldMatrix) -> SimulationReport:
    """Run the three phases on the subfunction output vector w (L x 1)."""
    q = scheme.E.q
    if w.q != q:
        raise ValueError(f"field mismatch: outputs over GF({w.q}), scheme over GF({q})")
    if w.rows != scheme.num_subfunctions or w.cols != 1:
        raise ValueError(
            f"need a {scheme.num_subfunctions}x1 output vector, got {w.rows}x{w.cols}"
        )
    files = _InstrumentedFiles(w.data[:, 0])
    e = scheme.E.data
    num_servers = scheme.num_servers

    # computation and encoding phase: each server evaluates its jobs only
    z = np.zeros(num_servers, dtype=np.int64)
    reads: list[tuple[int, ...]] = []
    for n in range(num_servers):
        jobs = scheme.jobs[n]
        acc = 0
        files.reads.clear()
        for l in jobs:
            acc += int(e[n, l - 1]) * int(files[l - 1])
        z[n] = acc % q
        touched = {l + 1 for l in files.reads}
        if touched != set(jobs):
            raise AssertionError(f"server {n + 1} read outside its job set: {sorted(touched)}")
        reads.append(tuple(sorted(touched)))

    # communication and decoding phase
    d = scheme.D.data
    audience_sets = [set(t) for t in scheme.audiences]
    delivered = []
    decoded = np.zeros(scheme.num_users, dtype=np.int64)
    for k in range(scheme.num_users):
        inbox = tuple((n + 1, int(z[n])) for n in range(num_servers) if k + 1 in audience_sets[n])
        delivered.append(inbox)
        decoded[k] = sum(int(d[k, n - 1]) * v for n, v in inbox) % q

    decoded_m = FieldMatrix(q, decoded.reshape(-1, 1))
    expected = mat_mul(scheme.demand.matrix, w)
    return SimulationReport(
        transmissions=FieldMatrix(q, z.reshape(-1, 1)),
        delivered=tuple(delivered),
        decoded=decoded_m,
        expected=expected,
        passed=decoded_m == expected,
        delay=max((len(s) for s in scheme.jobs), default=0),
        message_count=sum(len(t) for t in scheme.audiences),
        server_reads=tuple(reads),
    )


def random_trials(scheme: ComputingScheme, trials: int, seed: int) -> TrialAggregate:
    """Run `trials` independent uniform output vectors; deterministic in seed."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    rng = np.random.default_rng(seed)
    q = scheme.E.q
    num_l = scheme.num_subfunctions
    outcomes = []
    for _ in range(trials):
        w = FieldMatrix(q, rng.integers(0, q, size=(num_l, 1)))
        outcomes.append(run_once(scheme, w).passed)
    passes = sum(outcomes)
    return TrialAggregate(
        trials=trials,
        passes=passes,
        pass_rate=passes / trials,
        delay=max((len(s) for s in scheme.jobs), default=0),
        message_count=sum(len(t) for t in scheme.audiences),
        seed=seed,
        per_trial_passed=tuple(outcomes),
    )


def delay_accounting(scheme: ComputingScheme) -> tuple[tuple[int, ...], int]:
    """Per-server job counts and the overall delay, from the job sets alone.

    Each job costs one normalized time unit and servers work sequentially,
    so a server's delay is its job count and the system delay is the worst
    server's.  This is an independent path from the planner's row-weight
    accounting; the two must agree.
    """
    per_server = tuple(len(s) for s in scheme.jobs)
    return per_server, max(per_server, default=0)
