"""Deterministic random instance generation for tests, benchmarks, and the CLI."""

from __future__ import annotations

import random

from .model import Job, Machine
from .scenario import Scenario


def random_machines(
    rng: random.Random,
    count: int,
    *,
    speeds: str = "identical",
    power_max: float = 100.0,
    speed_max: float = 4.0,
    allow_gamma_above_mu: bool = False,
) -> list[Machine]:
    """Machines with random powers; idle power stays below working power unless allowed."""
    machines = []
    for i in range(count):
        mu = rng.uniform(0.0, power_max)
        gamma = rng.uniform(0.0, power_max) if allow_gamma_above_mu else rng.uniform(0.0, mu)
        upsilon = 1.0 if speeds == "identical" else rng.uniform(1.0, speed_max)
        machines.append(Machine(id=f"m{i + 1}", mu=mu, gamma=gamma, upsilon=upsilon))
    return machines


def random_jobs(rng: random.Random, count: int, *, weight_max: float = 100.0) -> list[Job]:
    return [Job(id=f"j{i + 1}", psi=rng.uniform(weight_max * 1e-6, weight_max)) for i in range(count)]


def random_scenario(
    seed: int,
    machine_count: int,
    job_count: int,
    *,
    mode: str = "divisible",
    speeds: str = "identical",
    power_max: float = 100.0,
    speed_max: float = 4.0,
    weight_max: float = 100.0,
    allow_gamma_above_mu: bool = False,
) -> Scenario:
    """Fully seeded scenario; the same arguments always produce the same instance.

    Divisible scenarios without jobs carry a total work amount instead.
    """
    if machine_count < 1:
        raise ValueError("at least one machine is required")
    if mode == "nondivisible" and job_count < 1:
        raise ValueError("nondivisible scenarios need at least one job")
    rng = random.Random(seed)
    machines = random_machines(
        rng,
        machine_count,
        speeds=speeds,
        power_max=power_max,
        speed_max=speed_max,
        allow_gamma_above_mu=allow_gamma_above_mu,
    )
    if job_count > 0:
        jobs = random_jobs(rng, job_count, weight_max=weight_max)
        return Scenario(mode=mode, machines=tuple(machines), jobs=tuple(jobs))
    total_work = rng.uniform(weight_max * 1e-6, weight_max)
    return Scenario(mode=mode, machines=tuple(machines), total_work=total_work)
