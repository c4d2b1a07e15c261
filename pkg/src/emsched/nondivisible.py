"""Approximation scheduling of indivisible jobs with bound certificates.

Indivisible jobs cannot always realize the divisible optimum, so these
solvers aim for the best achievable makespan instead: longest jobs first,
each placed where it finishes soonest, on the smallest machine prefix that
can meet that makespan.  Each schedule ships with a certificate bounding how
far its energy can sit above the ideal.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import NoJobsError, WorkingCountError
from .model import (
    EnergyBreakdown,
    Job,
    Regime,
    Schedule,
    energy_of_schedule,
    strictly_greater,
    values_close,
)
from .divisible import optimal_r_identical, optimal_working_set_different
from .ordering import IndexedFleet

#: Asymptotic worst-case makespan ratio of longest-processing-time list
#: scheduling on machines of different speeds (Kovacs' refinement of the
#: classic 2m/(m+1) bound).
LPT_DIFFERENT_SPEED_ASYMPTOTIC = 1.0 + math.sqrt(3.0) / 3.0


@dataclass(frozen=True)
class IdealTarget:
    """Best achievable makespan and the machine count that meets it."""

    t_o: float
    r_o: int


@dataclass(frozen=True)
class BoundCertificate:
    """Guaranteed ceiling on achieved-energy over ideal-energy.

    ``achieved_ratio`` stays absent until an exact optimum is available to
    compare against (small instances only).
    """

    kind: str  # "identical_eq_b1" or "different_2r"
    ratio_limit: float
    achieved_ratio: float | None = None
    lpt_asymptotic_limit: float | None = None

    def with_achieved(self, ratio: float) -> "BoundCertificate":
        return replace(self, achieved_ratio=ratio)


@dataclass(frozen=True)
class LptSolution:
    """Schedule produced by a list scheduler plus its certificate."""

    schedule: Schedule
    target: IdealTarget
    certificate: BoundCertificate
    energy: EnergyBreakdown

    @property
    def makespan(self) -> float:
        return self.schedule.makespan


def _ceil_with_tolerance(x: float) -> int:
    """Ceiling that forgives float noise just above an integer."""
    nearest = round(x)
    if values_close(x, nearest):
        return int(nearest)
    return int(math.ceil(x))


def _sorted_jobs(jobs: Sequence[Job]) -> list[Job]:
    if not jobs:
        raise NoJobsError("at least one job is required")
    order = sorted(range(len(jobs)), key=lambda i: (-jobs[i].psi, i))
    return [jobs[i] for i in order]


def ideal_target_identical(indexed: IndexedFleet, jobs: Sequence[Job]) -> IdealTarget:
    """Best achievable makespan when speeds are identical.

    The divisible optimum's makespan is stretched to fit the longest job,
    and the working-machine count shrinks to the fewest machines that still
    cover the total work in that time.
    """
    if not jobs:
        raise NoJobsError("at least one job is required")
    total_work = sum(j.psi for j in jobs)
    solution = optimal_r_identical(indexed, total_work)
    speed = indexed.fleet.machines[0].upsilon
    longest = max(j.psi for j in jobs)
    t_o = max(solution.makespan, longest / speed)
    r_o = _ceil_with_tolerance(total_work / (t_o * speed))
    r_o = max(1, min(r_o, len(indexed)))
    return IdealTarget(t_o=t_o, r_o=r_o)


def ideal_target_different(indexed: IndexedFleet, jobs: Sequence[Job]) -> IdealTarget:
    """Best achievable makespan when speeds differ.

    The longest job can finish no sooner than on the fastest machine in the
    fleet; the working-machine count is the shortest prefix whose combined
    speed covers the total work within that makespan.
    """
    if not jobs:
        raise NoJobsError("at least one job is required")
    total_work = sum(j.psi for j in jobs)
    solution = optimal_working_set_different(indexed, total_work)
    fastest = max(m.upsilon for m in indexed.fleet.machines)
    longest = max(j.psi for j in jobs)
    t_o = max(solution.makespan, longest / fastest)
    speed_sums = np.cumsum(indexed.fleet.upsilon_array)
    r_o = len(indexed)
    for r in range(1, len(indexed) + 1):
        if not strictly_greater(total_work / float(speed_sums[r - 1]), t_o):
            r_o = r
            break
    return IdealTarget(t_o=t_o, r_o=r_o)


def energy_bound_identical(indexed: IndexedFleet, r_o: int) -> BoundCertificate:
    """Worst-case energy ratio of the identical-speed list scheduler.

    ``1 + gamma_total * (4/3 - 1/(3 r_o) - 1) / (sum of first r_o power
    deltas + gamma_total)``; at most 4/3, and exactly 1 when nothing draws
    idle power.
    """
    if not 1 <= r_o <= len(indexed):
        raise WorkingCountError(f"r_o must be in 1..{len(indexed)}, got {r_o}")
    fleet = indexed.fleet
    slack = (4.0 - 1.0 / r_o) / 3.0 - 1.0
    denominator = float(np.sum(fleet.power_delta_array[:r_o])) + fleet.gamma_total
    if denominator == 0:
        # all-zero powers: every schedule costs nothing, the ratio is moot
        ratio_limit = 1.0
    else:
        ratio_limit = 1.0 + fleet.gamma_total * slack / denominator
    return BoundCertificate(kind="identical_eq_b1", ratio_limit=ratio_limit)


def energy_bound_different(r_o: int) -> BoundCertificate:
    """Worst-case energy ratio of the different-speed list scheduler.

    ``2 r_o / (r_o + 1)``, approaching 2 from below; asymptotically the
    tighter Kovacs constant ``1 + sqrt(3)/3`` applies.
    """
    if r_o < 1:
        raise WorkingCountError(f"r_o must be at least 1, got {r_o}")
    return BoundCertificate(
        kind="different_2r",
        ratio_limit=2.0 * r_o / (r_o + 1.0),
        lpt_asymptotic_limit=LPT_DIFFERENT_SPEED_ASYMPTOTIC,
    )


def schedule_lpt_identical(
    indexed: IndexedFleet, jobs: Sequence[Job], target: IdealTarget | None = None
) -> LptSolution:
    """Longest-job-first balancing onto the best machine prefix.

    Jobs in non-increasing weight order fill ``r_o`` buckets, each job
    joining the currently lightest bucket (ties to the oldest).  Buckets are
    then handed to machines heaviest-first, so earlier machines in the
    precedence order carry more work.  With fewer jobs than buckets, the
    spare machines idle.
    """
    if target is None:
        target = ideal_target_identical(indexed, jobs)
    ordered = _sorted_jobs(jobs)
    fleet = indexed.fleet
    bucket_count = min(target.r_o, len(ordered))
    weights = [0.0] * bucket_count
    members: list[list[str]] = [[] for _ in range(bucket_count)]
    heap = [(0.0, i) for i in range(bucket_count)]
    for job in ordered:
        weight, bucket = heapq.heappop(heap)
        weights[bucket] = weight + job.psi
        members[bucket].append(job.id)
        heapq.heappush(heap, (weights[bucket], bucket))
    order = sorted(range(bucket_count), key=lambda b: (-weights[b], b))
    work = {m.id: 0.0 for m in fleet.machines}
    jobs_by_machine = {}
    for machine_index, bucket in enumerate(order):
        machine_id = fleet.machines[machine_index].id
        work[machine_id] = weights[bucket]
        jobs_by_machine[machine_id] = tuple(members[bucket])
    schedule = Schedule.from_work(fleet, work, jobs_by_machine)
    certificate = energy_bound_identical(indexed, target.r_o)
    return LptSolution(
        schedule=schedule,
        target=target,
        certificate=certificate,
        energy=energy_of_schedule(fleet, schedule),
    )


def schedule_lpt_different(
    indexed: IndexedFleet, jobs: Sequence[Job], target: IdealTarget | None = None
) -> LptSolution:
    """Longest-job-first onto whichever prefix machine finishes it soonest.

    Restricted to the first ``r_o`` machines, each job (in non-increasing
    weight order) goes to the machine minimizing its completion time
    ``current working time + weight / speed``, ties to the earliest machine.
    """
    if target is None:
        target = ideal_target_different(indexed, jobs)
    ordered = _sorted_jobs(jobs)
    fleet = indexed.fleet
    r_o = target.r_o
    inv_speed = 1.0 / fleet.upsilon_array[:r_o]
    completion = np.zeros(r_o)
    loads = [0.0] * r_o
    members: list[list[str]] = [[] for _ in range(r_o)]
    for job in ordered:
        candidates = completion + job.psi * inv_speed
        chosen = int(np.argmin(candidates))
        completion[chosen] = candidates[chosen]
        loads[chosen] += job.psi
        members[chosen].append(job.id)
    work = {m.id: 0.0 for m in fleet.machines}
    jobs_by_machine = {}
    for i in range(r_o):
        machine_id = fleet.machines[i].id
        work[machine_id] = loads[i]
        jobs_by_machine[machine_id] = tuple(members[i])
    schedule = Schedule.from_work(fleet, work, jobs_by_machine)
    certificate = energy_bound_different(r_o)
    return LptSolution(
        schedule=schedule,
        target=target,
        certificate=certificate,
        energy=energy_of_schedule(fleet, schedule),
    )


def solve_nondivisible(indexed: IndexedFleet, jobs: Sequence[Job]) -> LptSolution:
    """Dispatch to the list scheduler matching the indexed fleet's regime."""
    if indexed.regime is Regime.IDENTICAL_SPEED:
        return schedule_lpt_identical(indexed, jobs)
    return schedule_lpt_different(indexed, jobs)
