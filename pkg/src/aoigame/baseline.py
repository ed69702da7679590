"""Centralised reference schedule: evenly spaced, never simultaneous updates.

An update sent in slot ``u`` resets the AoI of slot ``u + 1``.  The AoI
series ``delta(0..T)`` therefore splits into runs that each restart at 0;
a run of length ``L`` contributes ``L*(L-1)/2`` to the sum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

MAX_ENUMERATION = 10**7


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Schedule:
    horizon: int
    update_slots: tuple[int, ...]

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        slots = tuple(int(s) for s in self.update_slots)
        if any(b <= a for a, b in zip(slots, slots[1:])):
            raise ValueError("update slots must be strictly increasing")
        if slots and (slots[0] < 1 or slots[-1] > self.horizon):
            raise ValueError(f"update slots must lie in [1, {self.horizon}]")
        object.__setattr__(self, "update_slots", slots)


def aoi_sum_from_updates(horizon: int, update_slots) -> int:
    """Sum of ``delta(0..horizon)`` for updates at the given (distinct) slots."""
    total = 0
    start = 0
    for u in sorted(set(update_slots)):
        if u + 1 > horizon:
            break
        length = u + 1 - start
        total += length * (length - 1) // 2
        start = u + 1
    length = horizon + 1 - start
    return total + length * (length - 1) // 2


def average_aoi_from_updates(horizon: int, update_slots) -> float:
    """``sum(delta(0..T)) / T``: T+1 samples over T, as the metric is defined."""
    return aoi_sum_from_updates(horizon, update_slots) / horizon


def schedule_average_aoi(schedule: Schedule) -> float:
    return average_aoi_from_updates(schedule.horizon, schedule.update_slots)


def optimal_schedule(horizon: int, budget: int) -> Schedule:
    """Minimum-average-AoI schedule using ``min(budget, horizon)`` updates.

    Run lengths differ by at most one; the longer runs come first so the
    opening run (which must cover slots 0 and 1) is never too short.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    n = min(budget, horizon)
    if n >= horizon:
        return Schedule(horizon, tuple(range(1, horizon + 1)))
    q, r = divmod(horizon + 1, n + 1)
    slots = []
    start = 0
    for k in range(n):
        start += q + 1 if k < r else q
        slots.append(start - 1)
    return Schedule(horizon, tuple(slots))


def optimal_average_aoi(horizon: int, budget: int) -> float:
    return schedule_average_aoi(optimal_schedule(horizon, budget))


def _series_sums(horizon: int, combos: np.ndarray) -> np.ndarray:
    # literal slot-by-slot dynamics, vectorised over schedules
    m = combos.shape[0]
    reset = np.zeros((m, horizon + 2), dtype=bool)
    if combos.shape[1]:
        rows = np.repeat(np.arange(m), combos.shape[1])
        reset[rows, combos.ravel() + 1] = True
    reset[:, 0] = True
    t = np.arange(horizon + 2)
    last = np.maximum.accumulate(np.where(reset, t, 0), axis=1)
    delta = (t - last)[:, : horizon + 1]
    return delta.sum(axis=1)


def brute_force_optimal(horizon: int, budget: int) -> float:
    """Exhaustive minimum of the average AoI over all schedules with at most
    ``budget`` updates in ``[1, horizon]``."""
    budget = min(budget, horizon)
    count = sum(math.comb(horizon, k) for k in range(budget + 1))
    if count > MAX_ENUMERATION:
        raise EnumerationTooLarge(
            f"{count} schedules for horizon={horizon}, budget={budget} exceeds {MAX_ENUMERATION}"
        )
    best = None
    for k in range(budget + 1):
        combos = np.array(
            list(itertools.combinations(range(1, horizon + 1), k)), dtype=np.int64
        ).reshape(math.comb(horizon, k), k)
        low = int(_series_sums(horizon, combos).min())
        best = low if best is None else min(best, low)
    return best / horizon
