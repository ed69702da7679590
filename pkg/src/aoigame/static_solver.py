"""Equilibria of the one-shot update game.

Everything here follows from a single quantity per player, the AoI
threshold ``cost + weight*ln((G+1)/G)``.  Against a silent opponent a
player gains ``aoi - threshold`` by transmitting; against a transmitting
opponent it loses ``threshold``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .game_core import ActionProfile, PlayerParams, StageGame

# |aoi - threshold| at or below this counts as equality
TOL = 1e-9


class BestResponse(Enum):
    TRANSMIT = "transmit"
    SILENT = "silent"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class MixedProfile:
    p1: float
    p2: float

    def __post_init__(self):
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise ValueError(f"probabilities outside [0, 1]: ({self.p1}, {self.p2})")

    def __iter__(self):
        return iter((self.p1, self.p2))


@dataclass(frozen=True)
class EquilibriumSet:
    pure: tuple[ActionProfile, ...]
    mixed: MixedProfile | None = None

    @property
    def is_unique(self) -> bool:
        return len(self.pure) == 1


@dataclass(frozen=True)
class CriticalValues:
    c_star: float
    alpha_star: float
    g_star: float | None  # None when no token count makes the player transmit


def threshold_value(cost: float, incentive_weight: float, tokens: float) -> float:
    """Threshold for a possibly non-integer token count (``tokens > 0``)."""
    if not tokens > 0:
        raise ValueError(f"threshold undefined for tokens={tokens}")
    if incentive_weight == 0:
        return float(cost)
    return cost + incentive_weight * math.log1p(1.0 / tokens)


def threshold(params: PlayerParams) -> float:
    """AoI above which transmitting beats silence when the opponent is silent."""
    if params.tokens < 1:
        raise ValueError("threshold undefined for a player with zero tokens")
    return threshold_value(params.cost, params.incentive_weight, params.tokens)


def best_response(s_other: int, aoi: float, params: PlayerParams, tol: float = TOL) -> BestResponse:
    if params.tokens < 1 or s_other == 1:
        return BestResponse.SILENT
    gap = aoi - threshold(params)
    if gap > tol:
        return BestResponse.TRANSMIT
    if gap < -tol:
        return BestResponse.SILENT
    return BestResponse.INDIFFERENT


def _slacks(game: StageGame) -> tuple[float | None, float | None]:
    # aoi - threshold per player, None for a player that cannot transmit
    return tuple(
        game.aoi - threshold(p) if p.can_transmit else None for p in game.players
    )


def pure_nash(game: StageGame, tol: float = TOL) -> list[ActionProfile]:
    """All pure equilibria, in the order (1,1), (1,0), (0,1), (0,0)."""
    p1, p2 = game.players
    e1, e2 = _slacks(game)
    found = []
    # (1,1): each transmitter would save its threshold by backing off
    if e1 is not None and e2 is not None and threshold(p1) <= tol and threshold(p2) <= tol:
        found.append(ActionProfile(1, 1))
    # (1,0): the silent side never gains by joining, the sender must not gain by stopping
    if e1 is not None and e1 >= -tol:
        found.append(ActionProfile(1, 0))
    if e2 is not None and e2 >= -tol:
        found.append(ActionProfile(0, 1))
    # (0,0): neither gains by transmitting alone
    if (e1 is None or e1 <= tol) and (e2 is None or e2 <= tol):
        found.append(ActionProfile(0, 0))
    return found


def indifference_probability(aoi: float, params: PlayerParams) -> float:
    """Opponent transmit probability that leaves ``params``'s player indifferent.

    Solves ``-c + a*ln G = a*ln(G+1) - (1-p)*aoi`` for ``p``, i.e.
    ``p = slack / (threshold + slack)``.
    """
    slack = aoi - threshold(params)
    if aoi <= 0:
        return 0.0
    return slack / aoi


def printed_mixed_probability(aoi: float, params: PlayerParams) -> float:
    """``slack * (1/threshold + 1)``; kept for comparison only, it does not
    satisfy the indifference condition."""
    theta = threshold(params)
    return (aoi - theta) * (1.0 / theta + 1.0)


def expected_utilities(aoi: float, params: PlayerParams, p_other: float) -> tuple[float, float]:
    """Expected utility of (transmit, stay silent) against an opponent
    transmitting with probability ``p_other``."""
    g, a = params.tokens, params.incentive_weight
    transmit = -params.cost + a * math.log(g)
    silent = p_other * a * math.log(g + 1) + (1 - p_other) * (-aoi + a * math.log(g + 1))
    return transmit, silent


def mixed_nash(game: StageGame, tol: float = TOL) -> MixedProfile | None:
    e1, e2 = _slacks(game)
    if e1 is None or e2 is None or e1 < -tol or e2 < -tol:
        return None
    # player 1 mixes to make player 2 indifferent and vice versa
    p1 = indifference_probability(game.aoi, game.player2)
    p2 = indifference_probability(game.aoi, game.player1)
    p1, p2 = max(p1, 0.0), max(p2, 0.0)
    if p1 > 1.0 or p2 > 1.0:
        return None
    return MixedProfile(p1, p2)


def equilibrium_set(game: StageGame, tol: float = TOL) -> EquilibriumSet:
    return EquilibriumSet(tuple(pure_nash(game, tol)), mixed_nash(game, tol))


def critical_cost(aoi: float, params: PlayerParams) -> float:
    """Cost at which the threshold equals ``aoi``; higher costs keep the player silent."""
    if params.tokens < 1:
        raise ValueError("critical cost undefined for a player with zero tokens")
    return aoi - params.incentive_weight * math.log1p(1.0 / params.tokens)


def critical_alpha(aoi: float, params: PlayerParams) -> float:
    if params.tokens < 1:
        raise ValueError("critical weight undefined for a player with zero tokens")
    return (aoi - params.cost) / math.log1p(1.0 / params.tokens)


def critical_tokens(aoi: float, params: PlayerParams) -> float:
    """Real-valued token count at which the threshold equals ``aoi``.

    Above it the player transmits against a silent opponent.  ``tokens`` of
    ``params`` is ignored.
    """
    if not aoi > params.cost:
        raise ValueError(
            f"aoi={aoi} must exceed cost={params.cost}: no token count triggers a transmission"
        )
    if params.incentive_weight == 0:
        return 0.0
    try:
        return 1.0 / math.expm1((aoi - params.cost) / params.incentive_weight)
    except OverflowError:
        return 0.0


def critical_values(aoi: float, params: PlayerParams) -> CriticalValues:
    try:
        g_star = critical_tokens(aoi, params)
    except ValueError:
        g_star = None
    return CriticalValues(critical_cost(aoi, params), critical_alpha(aoi, params), g_star)
