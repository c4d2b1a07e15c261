"""Core power/energy model for scheduling on heterogeneous machines.

A machine is characterized by its working power (drawn while executing),
its idle power (drawn while on but not executing), and its speed (work per
unit time).  All machines stay powered for the full makespan, so a schedule's
energy is the sum over machines of ``working_power * working_time +
idle_power * (makespan - working_time)``.  A machine that is switched off
while idle is modeled by an idle power of zero.

All quantities are plain floats; the module deliberately carries no units.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import (
    DuplicateIdError,
    EmptyFleetError,
    EmptyScheduleError,
    IdleExceedsWorkingWarning,
    NegativeIdleTimeError,
    NegativePowerError,
    NonPositiveSpeedError,
    NonPositiveWeightError,
    UnknownMachineError,
    WorkingCountError,
)

#: Relative tolerance used whenever two derived quantities are compared.
REL_TOL = 1e-9
#: Absolute fallback for comparisons near zero.
ABS_TOL = 1e-12


def values_close(a: float, b: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """Whether two reals agree within relative tolerance (absolute near zero)."""
    return math.isclose(a, b, rel_tol=rel, abs_tol=abs_)


def strictly_greater(a: float, b: float, rel: float = REL_TOL, abs_: float = ABS_TOL) -> bool:
    """``a > b`` with values within tolerance treated as equal (not greater)."""
    return a > b and not values_close(a, b, rel, abs_)


class Regime(str, enum.Enum):
    """Speed structure of a fleet; drives which solver family applies."""

    IDENTICAL_SPEED = "identical_speed"
    DIFFERENT_SPEED = "different_speed"


@dataclass(frozen=True)
class Machine:
    """One executor: working power ``mu``, idle power ``gamma``, speed ``upsilon``."""

    id: str
    mu: float
    gamma: float
    upsilon: float = 1.0

    @property
    def power_delta(self) -> float:
        """Extra power drawn when working instead of idling (may be negative)."""
        return self.mu - self.gamma


@dataclass(frozen=True)
class Job:
    """One unit of demand; ``psi`` is its processing time on a unit-speed machine."""

    id: str
    psi: float


@dataclass(frozen=True)
class Fleet:
    """Validated, ordered collection of machines.

    ``gamma_total`` is the sum of all idle powers: it is charged over the
    makespan no matter which machines work.  The machine order is significant;
    solvers treat it as the precedence order (see :mod:`emsched.ordering`).
    """

    machines: tuple[Machine, ...]
    gamma_total: float
    regime: Regime

    def __len__(self) -> int:
        return len(self.machines)

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.machines)

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {m.id: i for i, m in enumerate(self.machines)}

    @cached_property
    def mu_array(self) -> np.ndarray:
        return np.array([m.mu for m in self.machines], dtype=float)

    @cached_property
    def gamma_array(self) -> np.ndarray:
        return np.array([m.gamma for m in self.machines], dtype=float)

    @cached_property
    def upsilon_array(self) -> np.ndarray:
        return np.array([m.upsilon for m in self.machines], dtype=float)

    @cached_property
    def power_delta_array(self) -> np.ndarray:
        return self.mu_array - self.gamma_array

    def index_of(self, machine_id: str) -> int:
        try:
            return self._positions[machine_id]
        except KeyError:
            raise UnknownMachineError(f"machine {machine_id!r} is not in the fleet") from None

    def reordered(self, positions: Iterable[int]) -> "Fleet":
        """A fleet with machines permuted into the given original positions."""
        machines = tuple(self.machines[p] for p in positions)
        return Fleet(machines=machines, gamma_total=self.gamma_total, regime=self.regime)


def detect_regime(machines: Iterable[Machine]) -> Regime:
    """Identical-speed when every speed matches the first within tolerance."""
    speeds = [m.upsilon for m in machines]
    first = speeds[0]
    if all(values_close(s, first) for s in speeds):
        return Regime.IDENTICAL_SPEED
    return Regime.DIFFERENT_SPEED


def validate_fleet(machines: Iterable[Machine]) -> Fleet:
    """Check machine invariants and assemble a :class:`Fleet`.

    Raises one of the validation errors on bad data.  A machine whose idle
    power exceeds its working power is accepted with an
    :class:`IdleExceedsWorkingWarning`; the model stays well defined, the
    machine just costs less working than idling.
    """
    machines = tuple(machines)
    if not machines:
        raise EmptyFleetError("a fleet needs at least one machine")
    seen: set[str] = set()
    odd: list[str] = []
    for m in machines:
        if m.id in seen:
            raise DuplicateIdError(f"duplicate machine id {m.id!r}")
        seen.add(m.id)
        if not m.upsilon > 0:
            raise NonPositiveSpeedError(f"machine {m.id!r}: speed must be positive, got {m.upsilon}")
        if m.mu < 0 or m.gamma < 0:
            raise NegativePowerError(
                f"machine {m.id!r}: powers must be non-negative, got mu={m.mu}, gamma={m.gamma}"
            )
        if m.gamma > m.mu:
            odd.append(m.id)
    if odd:
        warnings.warn(
            f"idle power exceeds working power for machine(s) {', '.join(odd)}",
            IdleExceedsWorkingWarning,
            stacklevel=2,
        )
    gamma_total = float(sum(m.gamma for m in machines))
    return Fleet(machines=machines, gamma_total=gamma_total, regime=detect_regime(machines))


def validate_jobs(jobs: Iterable[Job]) -> tuple[Job, ...]:
    """Check job invariants: unique ids, positive weights."""
    jobs = tuple(jobs)
    seen: set[str] = set()
    for j in jobs:
        if j.id in seen:
            raise DuplicateIdError(f"duplicate job id {j.id!r}")
        seen.add(j.id)
        if not j.psi > 0:
            raise NonPositiveWeightError(f"job {j.id!r}: weight must be positive, got {j.psi}")
    return jobs


class MachineAssignment(NamedTuple):
    """Work placed on one machine; ``job_ids`` is empty for divisible work."""

    work: float
    job_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class Schedule:
    """Per-machine work and working time, plus the resulting makespan.

    Working time is work divided by speed; the makespan is the largest
    working time.  Machines absent from ``assignments`` idle throughout.
    """

    assignments: Mapping[str, MachineAssignment]
    makespan: float
    working_times: Mapping[str, float]

    @classmethod
    def from_work(
        cls,
        fleet: Fleet,
        work: Mapping[str, float],
        jobs_by_machine: Mapping[str, tuple[str, ...]] | None = None,
    ) -> "Schedule":
        """Build a schedule from work amounts, deriving times and makespan."""
        ids = list(work.keys())
        positions = [fleet.index_of(machine_id) for machine_id in ids]
        amounts = np.asarray([work[machine_id] for machine_id in ids], dtype=float)
        times = amounts / fleet.upsilon_array[positions] if ids else amounts
        if jobs_by_machine:
            assignments = {
                machine_id: MachineAssignment(amount, tuple(jobs_by_machine.get(machine_id, ())))
                for machine_id, amount in zip(ids, amounts.tolist())
            }
        else:
            assignments = {
                machine_id: MachineAssignment(amount)
                for machine_id, amount in zip(ids, amounts.tolist())
            }
        return cls(
            assignments=assignments,
            makespan=float(times.max()) if ids else 0.0,
            working_times=dict(zip(ids, times.tolist())),
        )

    @property
    def total_work(self) -> float:
        return float(sum(a.work for a in self.assignments.values()))


class MachineEnergy(NamedTuple):
    working: float
    idle: float


@dataclass(frozen=True)
class EnergyBreakdown:
    """Total system energy split into working and idle components."""

    total: float
    working: float
    idle: float
    per_machine: Mapping[str, MachineEnergy]


def makespan_of_schedule(schedule: Schedule) -> float:
    """Largest working time across machines."""
    if not schedule.working_times:
        raise EmptyScheduleError("schedule has no machines")
    return max(schedule.working_times.values())


def energy_of_schedule(fleet: Fleet, schedule: Schedule) -> EnergyBreakdown:
    """Evaluate the power model for a schedule against a fleet.

    Every fleet machine is charged: working power over its working time and
    idle power over the rest of the makespan.  Machines the schedule does not
    mention idle for the whole makespan.
    """
    makespan = schedule.makespan
    unknown = schedule.working_times.keys() - fleet._positions.keys()
    if unknown:
        raise UnknownMachineError(f"machine {sorted(unknown)[0]!r} is not in the fleet")
    times = schedule.working_times
    tau = np.asarray([times.get(machine_id, 0.0) for machine_id in fleet.ids], dtype=float)
    if len(tau) and float(tau.min()) < 0:
        raise ValueError("working times must be non-negative")
    if len(tau) and strictly_greater(float(tau.max()), makespan):
        worst = max(times, key=times.get)
        raise NegativeIdleTimeError(
            f"machine {worst!r}: working time {times[worst]} exceeds makespan {makespan}"
        )
    tau = np.minimum(tau, makespan)  # clamp float-rounding overshoot
    working = fleet.mu_array * tau
    idle = fleet.gamma_array * (makespan - tau)
    working_sum = float(np.sum(working))
    idle_sum = float(np.sum(idle))
    per_machine = {
        machine_id: MachineEnergy(w, d)
        for machine_id, w, d in zip(fleet.ids, working.tolist(), idle.tolist())
    }
    return EnergyBreakdown(
        total=working_sum + idle_sum,
        working=working_sum,
        idle=idle_sum,
        per_machine=per_machine,
    )


def energy_divisible_closed_form(fleet: Fleet, r: int, total_work: float) -> float:
    """Energy of the equal-working-time schedule on the first ``r`` machines.

    The first ``r`` machines of the fleet's current order share ``total_work``
    so that all of them work for the same duration; the remaining machines
    idle.  Evaluates to ``W * (sum of the first r power deltas + gamma_total)
    / (sum of the first r speeds)``, which for unit speeds reduces to
    ``(W/r) * (sum of first r working powers + sum of remaining idle powers)``.
    """
    m = len(fleet)
    if not 1 <= r <= m:
        raise WorkingCountError(f"r must be in 1..{m}, got {r}")
    if total_work < 0:
        raise ValueError(f"total work must be non-negative, got {total_work}")
    delta_sum = float(np.sum(fleet.power_delta_array[:r]))
    speed_sum = float(np.sum(fleet.upsilon_array[:r]))
    return total_work * (delta_sum + fleet.gamma_total) / speed_sum
