"""Exact energy-minimal scheduling of divisible work.

The optimal working set is always a prefix of the precedence order, all
working machines run for the same length of time, and the prefix length that
minimizes energy does not depend on how much work there is.  The identical
speed solver scans the prefix energies directly; the different-speed solver
grows the working set greedily, admitting the next machine only while doing
so strictly lowers energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, UndefinedRatioError, WorkingCountError
from .model import (
    ABS_TOL,
    REL_TOL,
    EnergyBreakdown,
    MachineAssignment,
    Regime,
    Schedule,
    energy_of_schedule,
    strictly_greater,
)
from .ordering import IndexedFleet


@dataclass(frozen=True)
class DivisibleSolution:
    """Energy-minimal allocation of a divisible workload.

    The working set is the first ``r`` machines of the precedence order;
    each of them works for exactly the makespan, the rest idle throughout.
    """

    r: int
    working_set: tuple[str, ...]
    makespan: float
    per_machine_work: dict[str, float]
    energy: EnergyBreakdown

    def to_schedule(self, indexed: IndexedFleet) -> Schedule:
        return Schedule.from_work(indexed.fleet, self.per_machine_work)


def _prefix_energies(indexed: IndexedFleet, total_work: float) -> np.ndarray:
    """Energy of the equal-time schedule for every prefix length 1..m."""
    fleet = indexed.fleet
    power_sums = fleet.gamma_total + np.cumsum(fleet.power_delta_array)
    speed_sums = np.cumsum(fleet.upsilon_array)
    return total_work * power_sums / speed_sums


def _argmin_smallest(values: np.ndarray) -> int:
    """Index of the minimum; near-ties (within tolerance) go to the smallest index."""
    best = float(np.min(values))
    tol = max(REL_TOL * abs(best), ABS_TOL)
    return int(np.argmax(values <= best + tol))


def _bisect_unimodal_argmin(values: np.ndarray) -> int:
    """Leftmost minimum of a unimodal sequence via bisection.

    Only valid when the sequence strictly decreases then increases; on other
    shapes the linear scan is authoritative.
    """
    low, high = 0, len(values) - 1
    while low < high:
        mid = (low + high) // 2
        if values[mid] <= values[mid + 1]:
            high = mid
        else:
            low = mid + 1
    return low


def _solution_for_prefix(
    indexed: IndexedFleet, r: int, total_work: float, equal_split: bool
) -> DivisibleSolution:
    fleet = indexed.fleet
    speed_sum = float(np.sum(fleet.upsilon_array[:r]))
    makespan = total_work / speed_sum
    amounts = np.zeros(len(fleet))
    if equal_split:
        amounts[:r] = total_work / r
    else:
        amounts[:r] = makespan * fleet.upsilon_array[:r]
    amount_list = amounts.tolist()
    # per-machine times may differ from the reported makespan by float
    # rounding only; the makespan stays exactly W / (speed sum)
    time_list = (amounts / fleet.upsilon_array).tolist()
    work = dict(zip(fleet.ids, amount_list))
    schedule = Schedule(
        assignments={
            machine_id: MachineAssignment(amount)
            for machine_id, amount in zip(fleet.ids, amount_list)
        },
        makespan=makespan,
        working_times=dict(zip(fleet.ids, time_list)),
    )
    energy = energy_of_schedule(fleet, schedule)
    return DivisibleSolution(
        r=r,
        working_set=fleet.ids[:r],
        makespan=makespan,
        per_machine_work=work,
        energy=energy,
    )


def _degenerate_solution(indexed: IndexedFleet) -> DivisibleSolution:
    """Zero work: one nominal working machine, zero time, zero energy."""
    fleet = indexed.fleet
    work = {m.id: 0.0 for m in fleet.machines}
    schedule = Schedule.from_work(fleet, work)
    return DivisibleSolution(
        r=1,
        working_set=fleet.ids[:1],
        makespan=0.0,
        per_machine_work=work,
        energy=energy_of_schedule(fleet, schedule),
    )


def optimal_r_identical(
    indexed: IndexedFleet, total_work: float, search: str = "linear"
) -> DivisibleSolution:
    """Best number of working machines for an identical-speed fleet.

    Scans the energy of every prefix length and keeps the smallest count
    within tolerance of the minimum.  ``search="binary"`` bisects instead,
    which assumes the prefix energies are unimodal; the linear scan is the
    default and the authority.
    """
    if total_work < 0:
        raise ValueError(f"total work must be non-negative, got {total_work}")
    if total_work == 0:
        return _degenerate_solution(indexed)
    energies = _prefix_energies(indexed, total_work)
    if search == "linear":
        r = _argmin_smallest(energies) + 1
    elif search == "binary":
        r = _bisect_unimodal_argmin(energies) + 1
    else:
        raise ValueError(f"unknown search strategy {search!r}")
    return _solution_for_prefix(indexed, r, total_work, equal_split=True)


def admission_gain_identical(
    indexed: IndexedFleet, r: int, deltas: Sequence[float]
) -> float:
    """Energy saved by letting machine ``r`` work, given the work it takes over.

    ``deltas[i]`` is the work withdrawn from machine ``i+1`` (the first
    ``r - 1`` machines in precedence order) and handed to machine ``r``.
    Positive gain means admitting machine ``r`` lowers total energy; the
    returned value equals the energy of the ``r - 1``-machine schedule minus
    the energy of the ``r``-machine schedule.
    """
    fleet = indexed.fleet
    if not 2 <= r <= len(fleet):
        raise WorkingCountError(f"r must be in 2..{len(fleet)}, got {r}")
    if len(deltas) != r - 1:
        raise DimensionMismatchError(f"expected {r - 1} work deltas, got {len(deltas)}")
    if any(d < 0 for d in deltas):
        raise ValueError("work deltas must be non-negative")
    newcomer = fleet.machines[r - 1].power_delta
    gain = sum(
        (fleet.machines[i].power_delta - newcomer) * deltas[i] for i in range(r - 1)
    )
    return gain + deltas[0] * fleet.gamma_total


def optimal_working_set_different(
    indexed: IndexedFleet, total_work: float
) -> DivisibleSolution:
    """Grow the working set while each next machine strictly lowers energy.

    Starting from the head machine, machine ``r + 1`` is admitted while its
    power-delta-per-speed is strictly below the working set's energy rate
    ``(sum of power deltas + gamma_total) / (sum of speeds)``; the first
    failure stops the scan.  Equality does not admit.  Work is then spread so
    all working machines finish together.
    """
    if total_work < 0:
        raise ValueError(f"total work must be non-negative, got {total_work}")
    if total_work == 0:
        return _degenerate_solution(indexed)
    fleet = indexed.fleet
    power_sum = fleet.gamma_total + fleet.machines[0].power_delta
    speed_sum = fleet.machines[0].upsilon
    r = 1
    for machine in fleet.machines[1:]:
        if not strictly_greater(power_sum / speed_sum, machine.power_delta / machine.upsilon):
            break
        power_sum += machine.power_delta
        speed_sum += machine.upsilon
        r += 1
    return _solution_for_prefix(indexed, r, total_work, equal_split=False)


def solve_divisible(
    indexed: IndexedFleet, total_work: float, search: str = "linear"
) -> DivisibleSolution:
    """Dispatch to the solver matching the indexed fleet's regime."""
    if indexed.regime is Regime.IDENTICAL_SPEED:
        return optimal_r_identical(indexed, total_work, search=search)
    return optimal_working_set_different(indexed, total_work)


def working_energy_ratio(indexed: IndexedFleet, r: int) -> float:
    """Share of total energy spent working when the first ``r`` machines run.

    Equals ``sum of first r working powers / (that sum + remaining idle
    powers)`` under the equal-working-time schedule; 1 when every machine
    works or when nothing idles at positive power.
    """
    fleet = indexed.fleet
    if not 1 <= r <= len(fleet):
        raise WorkingCountError(f"r must be in 1..{len(fleet)}, got {r}")
    working = float(np.sum(fleet.mu_array[:r]))
    denominator = working + float(np.sum(fleet.gamma_array[r:]))
    if denominator == 0:
        raise UndefinedRatioError("all powers are zero; the ratio is undefined")
    return working / denominator


@dataclass(frozen=True)
class IncompatibilityReport:
    """How the two efficiency measures disagree on one instance.

    Total energy per unit work is minimized by ``energy_optimal_r`` machines,
    while the working-to-total energy ratio always peaks with every machine
    engaged.  ``conflict`` flags instances where the two optima differ.
    """

    energy_optimal_r: int
    ratio_optimal_r: int
    energies: tuple[float, ...]
    ratios: tuple[float, ...]
    conflict: bool


def incompatibility_report(indexed: IndexedFleet, total_work: float) -> IncompatibilityReport:
    """Evaluate both efficiency measures across every working-set size."""
    m = len(indexed)
    energies = tuple(float(e) for e in _prefix_energies(indexed, total_work))
    ratios = tuple(working_energy_ratio(indexed, r) for r in range(1, m + 1))
    solution = solve_divisible(indexed, total_work) if total_work > 0 else None
    energy_optimal_r = solution.r if solution else _argmin_smallest(np.array(energies)) + 1
    return IncompatibilityReport(
        energy_optimal_r=energy_optimal_r,
        ratio_optimal_r=m,
        energies=energies,
        ratios=ratios,
        conflict=energy_optimal_r != m,
    )


@dataclass(frozen=True)
class OrderingAnomaly:
    """Witness that the greedy preference order can skip a machine.

    Relative to the working set of the first ``prefix_len`` machines, both
    machines qualify for admission, the slower one wins on
    power-delta-per-speed, yet admitting the faster one alone costs less.
    Such instances are the known blind spot of the greedy order: the skipped
    machine still belongs in the optimal set, but the optimal set need not be
    a prefix.
    """

    prefix_len: int
    slower_position: int
    faster_position: int
    slower_ratio: float
    faster_ratio: float
    slower_gain_rate: float
    faster_gain_rate: float


def ordering_anomalies(indexed: IndexedFleet) -> list[OrderingAnomaly]:
    """Scan greedy states for qualified machine pairs the order mis-ranks.

    For each working-set prefix the greedy pass can reach (including the
    empty one, where admission rates reduce to the solo-machine keys), look
    for a pair of not-yet-admitted machines where the slower machine has the
    strictly smaller power-delta-per-speed yet yields the larger energy after
    single admission.  A non-empty result explains why a brute-force subset
    search may beat the greedy prefix on this fleet.
    """
    fleet = indexed.fleet
    machines = fleet.machines
    m = len(machines)
    anomalies: list[OrderingAnomaly] = []
    power_sum = fleet.gamma_total
    speed_sum = 0.0
    for prefix_len in range(m):
        if prefix_len > 0:
            machine = machines[prefix_len - 1]
            if prefix_len > 1 and not strictly_greater(
                power_sum / speed_sum, machine.power_delta / machine.upsilon
            ):
                break  # greedy never reaches deeper prefixes
            power_sum += machine.power_delta
            speed_sum += machine.upsilon
        for j in range(prefix_len, m):
            for k in range(prefix_len, m):
                if j == k:
                    continue
                slower, faster = machines[j], machines[k]
                if not slower.upsilon < faster.upsilon:
                    continue
                slow_ratio = slower.power_delta / slower.upsilon
                fast_ratio = faster.power_delta / faster.upsilon
                if not slow_ratio < fast_ratio:
                    continue
                if speed_sum > 0:
                    rate = power_sum / speed_sum
                    if not (strictly_greater(rate, slow_ratio) and strictly_greater(rate, fast_ratio)):
                        continue
                slow_after = (power_sum + slower.power_delta) / (speed_sum + slower.upsilon)
                fast_after = (power_sum + faster.power_delta) / (speed_sum + faster.upsilon)
                if strictly_greater(slow_after, fast_after):
                    anomalies.append(
                        OrderingAnomaly(
                            prefix_len=prefix_len,
                            slower_position=j,
                            faster_position=k,
                            slower_ratio=slow_ratio,
                            faster_ratio=fast_ratio,
                            slower_gain_rate=slow_after,
                            faster_gain_rate=fast_after,
                        )
                    )
    return anomalies
