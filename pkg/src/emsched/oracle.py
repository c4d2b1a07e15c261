"""Exhaustive exact solvers used as ground truth on small instances.

These deliberately enumerate every configuration: every non-empty machine
subset for divisible work, every job-to-machine assignment for indivisible
jobs.  No pruning, no dynamic programming; their value is that they are
simple enough to trust.  Guards reject instances too large to enumerate.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FleetTooLargeError, InstanceTooLargeError, NoJobsError, WorkingCountError
from .model import Fleet, Job

#: Largest machine count for subset enumeration (2^m - 1 subsets).
MAX_SUBSET_MACHINES = 20
#: Largest assignment count for job-to-machine enumeration.
MAX_ASSIGNMENTS = 10**8

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    """Minimum-energy configuration found by full enumeration.

    ``best_config`` is a machine-subset bitmask (bit ``i`` = machine at
    position ``i``) for divisible work, or a per-job tuple of machine
    positions for indivisible jobs.  Ties go to the lowest bitmask or the
    lexicographically smallest assignment vector.
    """

    best_energy: float
    best_config: int | tuple[int, ...]
    explored: int


def mask_to_positions(mask: int) -> tuple[int, ...]:
    """Machine positions selected by a subset bitmask."""
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def is_prefix_mask(mask: int) -> bool:
    """Whether a bitmask selects positions 0..k-1 for some k."""
    return mask > 0 and mask & (mask + 1) == 0


def _divisible_chunk(
    deltas: np.ndarray,
    speeds: np.ndarray,
    gamma_total: float,
    total_work: float,
    lo: int,
    hi: int,
) -> tuple[float, int]:
    masks = np.arange(lo, hi, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(deltas), dtype=np.int64)) & 1
    power_sums = bits @ deltas + gamma_total
    speed_sums = bits @ speeds
    energies = total_work * power_sums / speed_sums
    i = int(np.argmin(energies))
    return float(energies[i]), int(masks[i])


def oracle_divisible(fleet: Fleet, total_work: float, workers: int = 1) -> OracleResult:
    """Minimum equal-working-time energy over every non-empty machine subset.

    Each subset's energy is ``W * (sum of member power deltas + gamma_total)
    / (sum of member speeds)``: members share the work so they finish
    together, everyone else idles for the whole makespan.
    """
    m = len(fleet)
    if m > MAX_SUBSET_MACHINES:
        raise FleetTooLargeError(f"subset enumeration capped at {MAX_SUBSET_MACHINES} machines, got {m}")
    if not total_work > 0:
        raise ValueError(f"total work must be positive, got {total_work}")
    deltas = fleet.power_delta_array
    speeds = fleet.upsilon_array
    chunks = [
        (lo, min(lo + _CHUNK, 1 << m)) for lo in range(1, 1 << m, _CHUNK)
    ]
    args = [(deltas, speeds, fleet.gamma_total, total_work, lo, hi) for lo, hi in chunks]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_divisible_chunk_star, args))
    else:
        results = [_divisible_chunk(*a) for a in args]
    best_energy, best_mask = results[0]
    for energy, mask in results[1:]:
        if energy < best_energy:
            best_energy, best_mask = energy, mask
    return OracleResult(best_energy=best_energy, best_config=best_mask, explored=(1 << m) - 1)


def _divisible_chunk_star(args):
    return _divisible_chunk(*args)


def _assignment_chunk(
    deltas: np.ndarray,
    speeds: np.ndarray,
    gamma_total: float,
    weights: np.ndarray,
    k: int,
    lo: int,
    hi: int,
) -> tuple[float, int]:
    n = len(weights)
    ids = np.arange(lo, hi, dtype=np.int64)
    # job 0 in the most significant digit: ascending ids enumerate assignment
    # vectors in lexicographic order
    place = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (ids[:, None] // place) % k
    working_times = np.zeros((len(ids), len(deltas)))
    for machine in range(k):
        working_times[:, machine] = (weights * (digits == machine)).sum(axis=1) / speeds[machine]
    makespans = working_times.max(axis=1)
    energies = working_times @ deltas + gamma_total * makespans
    i = int(np.argmin(energies))
    return float(energies[i]), int(ids[i])


def _assignment_chunk_star(args):
    return _assignment_chunk(*args)


def _decode_assignment(code: int, k: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        digits.append(code % k)
        code //= k
    return tuple(reversed(digits))


def oracle_nondivisible(
    fleet: Fleet,
    jobs: Sequence[Job],
    machine_limit: int | None = None,
    workers: int = 1,
) -> OracleResult:
    """Minimum energy over every assignment of each job to one machine.

    With ``machine_limit`` only the first machines of the fleet's order may
    receive jobs, but every fleet machine's idle power is still charged over
    the makespan.
    """
    m = len(fleet)
    if not jobs:
        raise NoJobsError("at least one job is required")
    k = machine_limit if machine_limit is not None else m
    if not 1 <= k <= m:
        raise WorkingCountError(f"machine_limit must be in 1..{m}, got {k}")
    n = len(jobs)
    total = k**n
    if total > MAX_ASSIGNMENTS:
        raise InstanceTooLargeError(
            f"assignment enumeration capped at {MAX_ASSIGNMENTS} configurations, got {k}^{n} = {total}"
        )
    deltas = fleet.power_delta_array[:k]
    speeds = fleet.upsilon_array[:k]
    weights = np.array([j.psi for j in jobs], dtype=float)
    chunks = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    args = [(deltas, speeds, fleet.gamma_total, weights, k, lo, hi) for lo, hi in chunks]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_assignment_chunk_star, args))
    else:
        results = [_assignment_chunk(*a) for a in args]
    best_energy, best_code = results[0]
    for energy, code in results[1:]:
        if energy < best_energy:
            best_energy, best_code = energy, code
    return OracleResult(
        best_energy=best_energy,
        best_config=_decode_assignment(best_code, k, n),
        explored=total,
    )


def assignment_loads(fleet: Fleet, jobs: Sequence[Job], assignment: Sequence[int]) -> np.ndarray:
    """Per-machine work implied by an assignment vector."""
    loads = np.zeros(len(fleet))
    for job, machine in zip(jobs, assignment):
        loads[machine] += job.psi
    return loads


def assignment_makespan(fleet: Fleet, jobs: Sequence[Job], assignment: Sequence[int]) -> float:
    """Makespan implied by an assignment vector."""
    loads = assignment_loads(fleet, jobs, assignment)
    return float(np.max(loads / fleet.upsilon_array))
