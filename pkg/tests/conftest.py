import random

import pytest

from emsched import Job, Machine, assume_indexed, validate_fleet


def machine(mid, mu, gamma, upsilon=1.0):
    return Machine(id=mid, mu=float(mu), gamma=float(gamma), upsilon=float(upsilon))


def jobs_from(weights):
    return [Job(id=f"j{i + 1}", psi=float(w)) for i, w in enumerate(weights)]


def fleet_from(rows):
    """Fleet from (mu, gamma[, upsilon]) tuples, ids m1..mN, order as given."""
    machines = []
    for i, row in enumerate(rows):
        upsilon = row[2] if len(row) > 2 else 1.0
        machines.append(machine(f"m{i + 1}", row[0], row[1], upsilon))
    return validate_fleet(machines)


def preindexed(rows):
    """Indexed fleet that treats the given row order as the precedence order."""
    return assume_indexed(fleet_from(rows))


@pytest.fixture
def rng():
    return random.Random(20240817)
