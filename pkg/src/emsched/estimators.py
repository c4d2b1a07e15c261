"""Estimator-style wrappers so the solvers compose with the sklearn ecosystem.

Fitting learns everything that depends on the fleet alone: validation, the
precedence order, and (for divisible work) the optimal working set, which is
independent of how much work arrives.  Prediction then maps workloads to
allocations.  Both classes follow the usual conventions: ``get_params`` /
``set_params`` from ``BaseEstimator``, trailing-underscore fitted attributes,
``NotFittedError`` before :meth:`fit`.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .divisible import DivisibleSolution, solve_divisible
from .model import Fleet, Job, Machine, Regime, validate_fleet, validate_jobs
from .nondivisible import LptSolution, solve_nondivisible
from .ordering import IndexedFleet, index_fleet


def as_machines(X) -> list[Machine]:
    """Accept ``Machine`` sequences or array-likes of (mu, gamma, upsilon)."""
    if isinstance(X, Fleet):
        return list(X.machines)
    items = list(X)
    if items and all(isinstance(m, Machine) for m in items):
        return items
    array = np.asarray(X, dtype=float)
    if array.ndim != 2 or array.shape[1] not in (2, 3):
        raise ValueError(
            "machines must be Machine objects or a 2D array with columns "
            "(mu, gamma) or (mu, gamma, upsilon)"
        )
    machines = []
    for i, row in enumerate(array):
        upsilon = float(row[2]) if array.shape[1] == 3 else 1.0
        machines.append(Machine(id=f"m{i + 1}", mu=float(row[0]), gamma=float(row[1]), upsilon=upsilon))
    return machines


def as_jobs(X) -> list[Job]:
    """Accept ``Job`` sequences or a 1D array-like of weights."""
    items = list(X)
    if items and all(isinstance(j, Job) for j in items):
        return items
    array = np.asarray(X, dtype=float)
    if array.ndim != 1:
        raise ValueError("jobs must be Job objects or a 1D array of weights")
    return [Job(id=f"j{i + 1}", psi=float(w)) for i, w in enumerate(array)]


class _FleetFitMixin:
    regime: str

    def _fit_fleet(self, X) -> IndexedFleet:
        machines = as_machines(X)
        fleet = validate_fleet(machines)
        forced = None if self.regime == "auto" else Regime(self.regime)
        self.fleet_ = fleet
        self.indexed_ = index_fleet(fleet, forced)
        return self.indexed_

    def _check_fitted(self) -> None:
        if not hasattr(self, "indexed_"):
            raise NotFittedError(f"{type(self).__name__} must be fitted before use")


class DivisibleScheduler(BaseEstimator, _FleetFitMixin):
    """Energy-minimal splitter of a divisible workload across a fleet.

    Parameters
    ----------
    regime : "auto", "identical_speed" or "different_speed"
        Which solver family to use; "auto" follows the fleet's speeds.
    search : "linear" or "binary"
        Working-set search strategy for identical-speed fleets.

    After :meth:`fit`, ``r_`` is the optimal working-machine count and
    ``working_set_`` the machine ids that should run; neither depends on the
    amount of work.  :meth:`predict` maps total work to per-machine work in
    the original machine order.
    """

    def __init__(self, regime: str = "auto", search: str = "linear"):
        self.regime = regime
        self.search = search

    def fit(self, X, y=None) -> "DivisibleScheduler":
        indexed = self._fit_fleet(X)
        probe = solve_divisible(indexed, 1.0, search=self.search)
        self.r_ = probe.r
        self.working_set_ = probe.working_set
        self.unit_work_ = self._work_vector(probe)
        return self

    def _work_vector(self, solution: DivisibleSolution) -> np.ndarray:
        # per-machine work for one unit of total work, in original input order
        vector = np.zeros(len(self.fleet_))
        for machine_id, amount in solution.per_machine_work.items():
            vector[self.fleet_.index_of(machine_id)] = amount
        return vector

    def predict(self, W) -> np.ndarray:
        """Per-machine work for total work ``W`` (scalar or 1D array)."""
        self._check_fitted()
        totals = np.asarray(W, dtype=float)
        # allocations scale linearly with total work
        if totals.ndim == 0:
            return float(totals) * self.unit_work_
        if totals.ndim != 1:
            raise ValueError("W must be a scalar or a 1D array of work totals")
        return np.outer(totals, self.unit_work_)

    def solve(self, total_work: float) -> DivisibleSolution:
        """Full solution (working set, makespan, energy) for one workload."""
        self._check_fitted()
        return solve_divisible(self.indexed_, float(total_work), search=self.search)


class LptScheduler(BaseEstimator, _FleetFitMixin):
    """Longest-job-first scheduler for indivisible jobs on a fitted fleet.

    :meth:`predict` labels each job with the original position of the machine
    it lands on, which makes the scheduler usable anywhere a classifier-like
    ``fit``/``predict`` pair is expected.
    """

    def __init__(self, regime: str = "auto"):
        self.regime = regime

    def fit(self, X, y=None) -> "LptScheduler":
        self._fit_fleet(X)
        return self

    def schedule(self, jobs: Sequence[Job]) -> LptSolution:
        """Schedule jobs and return the allocation with its certificate."""
        self._check_fitted()
        return solve_nondivisible(self.indexed_, validate_jobs(as_jobs(jobs)))

    def predict(self, jobs) -> np.ndarray:
        """Original machine position for each job, in the given job order."""
        self._check_fitted()
        job_list = validate_jobs(as_jobs(jobs))
        solution = self.schedule(job_list)
        position = {}
        for machine_id, assignment in solution.schedule.assignments.items():
            for job_id in assignment.job_ids:
                position[job_id] = self.fleet_.index_of(machine_id)
        return np.array([position[j.id] for j in job_list], dtype=int)
