"""Players, actions and payoffs of the two-sensor update game.

Each slot the two sensors simultaneously decide whether to push a fresh
sample to the receiver.  A player's utility trades the shared AoI penalty
(paid only when nobody transmits) against its own transmission cost and a
logarithmic bonus for the tokens it keeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

import numpy as np


class InfeasibleActionError(ValueError):
    """Raised when a player without tokens is asked to transmit."""


class Action(IntEnum):
    SILENT = 0
    TRANSMIT = 1


class ActionProfile(NamedTuple):
    s1: int
    s2: int

    def __str__(self) -> str:
        return f"({self.s1},{self.s2})"


ALL_PROFILES = tuple(ActionProfile(a, b) for a in (1, 0) for b in (1, 0))


@dataclass(frozen=True)
class PlayerParams:
    """Cost, incentive weight and remaining tokens of one sensor."""

    cost: float
    incentive_weight: float
    tokens: int

    def __post_init__(self):
        if not self.cost >= 0:
            raise ValueError(f"cost must be >= 0, got {self.cost}")
        if not self.incentive_weight >= 0:
            raise ValueError(f"incentive_weight must be >= 0, got {self.incentive_weight}")
        if isinstance(self.tokens, bool) or int(self.tokens) != self.tokens:
            raise ValueError(f"tokens must be an integer, got {self.tokens!r}")
        if self.tokens < 0:
            raise ValueError(f"tokens must be >= 0, got {self.tokens}")
        object.__setattr__(self, "tokens", int(self.tokens))

    @property
    def can_transmit(self) -> bool:
        return self.tokens >= 1

    def with_tokens(self, tokens: int) -> PlayerParams:
        return PlayerParams(self.cost, self.incentive_weight, tokens)


@dataclass(frozen=True)
class StageGame:
    aoi: float
    player1: PlayerParams
    player2: PlayerParams

    def __post_init__(self):
        if not self.aoi >= 0:
            raise ValueError(f"aoi must be >= 0, got {self.aoi}")

    @property
    def players(self) -> tuple[PlayerParams, PlayerParams]:
        return (self.player1, self.player2)


def utility(s_i: int, s_other: int, aoi: float, params: PlayerParams) -> float:
    """Stage utility of a player choosing ``s_i`` while the opponent plays ``s_other``.

    ``-aoi*(1-s_i)*(1-s_other) - cost*s_i + weight*ln(1 + tokens - s_i)``
    """
    if s_i not in (0, 1) or s_other not in (0, 1):
        raise ValueError(f"actions must be 0 or 1, got ({s_i}, {s_other})")
    if s_i == 1 and params.tokens < 1:
        raise InfeasibleActionError("cannot transmit with zero tokens")
    return (
        -aoi * (1 - s_i) * (1 - s_other)
        - params.cost * s_i
        + params.incentive_weight * math.log(1 + params.tokens - s_i)
    )


@dataclass(frozen=True)
class PayoffBimatrix:
    """2x2 normal form, indexed ``payoffs[s1, s2, player]``.

    Cells that need a zero-token player to transmit hold NaN and are
    ``False`` in ``feasible``.
    """

    payoffs: np.ndarray
    feasible: np.ndarray

    def cell(self, s1: int, s2: int) -> tuple[float, float] | None:
        if not self.feasible[s1, s2]:
            return None
        u = self.payoffs[s1, s2]
        return (float(u[0]), float(u[1]))

    def feasible_profiles(self) -> list[ActionProfile]:
        return [p for p in ALL_PROFILES if self.feasible[p.s1, p.s2]]


def payoff_bimatrix(game: StageGame) -> PayoffBimatrix:
    p1, p2 = game.players
    payoffs = np.full((2, 2, 2), np.nan)
    feasible = np.zeros((2, 2), dtype=bool)
    for s1 in (0, 1):
        for s2 in (0, 1):
            if (s1 and not p1.can_transmit) or (s2 and not p2.can_transmit):
                continue
            feasible[s1, s2] = True
            payoffs[s1, s2, 0] = utility(s1, s2, game.aoi, p1)
            payoffs[s1, s2, 1] = utility(s2, s1, game.aoi, p2)
    payoffs.flags.writeable = False
    feasible.flags.writeable = False
    return PayoffBimatrix(payoffs, feasible)
