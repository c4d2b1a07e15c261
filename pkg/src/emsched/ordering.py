"""Machine precedence: the index order every solver consumes.

For identical-speed fleets, machines are ordered by the difference between
working and idle power, ascending: cheap-to-engage machines come first.  For
different-speed fleets the head position goes to the machine that would be
cheapest running alone, which is the one minimizing
``(mu - gamma + gamma_total) / upsilon``; the rest follow in ascending
``(mu - gamma) / upsilon``.  Ties keep the original input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Fleet, Regime, values_close


@dataclass(frozen=True)
class IndexedFleet:
    """A fleet permuted into precedence order.

    ``permutation[i]`` is the original position of the machine now at index
    ``i``; ``keys[i]`` is the sort key that put it there.  ``regime`` records
    which ordering rule was applied, which may deliberately differ from the
    fleet's detected regime (the different-speed theory subsumes the
    identical-speed case).
    """

    fleet: Fleet
    permutation: tuple[int, ...]
    keys: tuple[float, ...]
    regime: Regime

    def __len__(self) -> int:
        return len(self.fleet)


def _stable_argsort(keys: Sequence[float]) -> list[int]:
    return sorted(range(len(keys)), key=lambda i: (keys[i], i))


def index_identical(fleet: Fleet) -> IndexedFleet:
    """Order machines by working-minus-idle power, ascending, stably."""
    deltas = [m.power_delta for m in fleet.machines]
    order = _stable_argsort(deltas)
    return IndexedFleet(
        fleet=fleet.reordered(order),
        permutation=tuple(order),
        keys=tuple(deltas[i] for i in order),
        regime=Regime.IDENTICAL_SPEED,
    )


def index_different(fleet: Fleet) -> IndexedFleet:
    """Head = cheapest solo machine; remainder by power-delta-per-speed.

    The head machine minimizes ``(mu - gamma + gamma_total) / upsilon``
    (ties going to the earliest input position, detected within tolerance);
    the others follow in ascending ``(mu - gamma) / upsilon``.
    """
    machines = fleet.machines
    solo_keys = [(m.power_delta + fleet.gamma_total) / m.upsilon for m in machines]
    best = min(solo_keys)
    head = next(i for i, key in enumerate(solo_keys) if values_close(key, best))
    ratios = [m.power_delta / m.upsilon for m in machines]
    rest = _stable_argsort([ratios[i] for i in range(len(machines)) if i != head])
    others = [i for i in range(len(machines)) if i != head]
    order = [head] + [others[j] for j in rest]
    keys = [solo_keys[head]] + [ratios[i] for i in order[1:]]
    return IndexedFleet(
        fleet=fleet.reordered(order),
        permutation=tuple(order),
        keys=tuple(keys),
        regime=Regime.DIFFERENT_SPEED,
    )


def index_fleet(fleet: Fleet, regime: Regime | None = None) -> IndexedFleet:
    """Index by the fleet's detected regime, or force one explicitly."""
    regime = regime or fleet.regime
    if regime is Regime.IDENTICAL_SPEED:
        return index_identical(fleet)
    return index_different(fleet)


def assume_indexed(fleet: Fleet) -> IndexedFleet:
    """Wrap a fleet whose current order is already the precedence order."""
    if fleet.regime is Regime.IDENTICAL_SPEED:
        keys = tuple(m.power_delta for m in fleet.machines)
    else:
        keys = tuple(m.power_delta / m.upsilon for m in fleet.machines)
    return IndexedFleet(
        fleet=fleet,
        permutation=tuple(range(len(fleet))),
        keys=keys,
        regime=fleet.regime,
    )
