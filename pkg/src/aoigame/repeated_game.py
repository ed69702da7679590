"""Finite-horizon repeated play of the stage game.

Slot ``t`` is played at the receiver's current AoI ``delta(t)``.  Every
transmitting sensor spends a token; if anyone transmitted the AoI of the
next slot is 0, otherwise it grows by one.  In each slot the sensors play
an equilibrium of the stage game built from the current AoI and tokens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator

import numpy as np

from .game_core import ActionProfile, PlayerParams, StageGame
from .static_solver import TOL, EquilibriumSet, equilibrium_set, threshold


class SelectionPolicy(str, Enum):
    """How to pick a profile when the stage game has several equilibria."""

    MIXED_SAMPLING = "mixed_sampling"
    LEXICOGRAPHIC = "lexicographic"
    TOKEN_PRIORITY = "token_priority"
    ALTERNATING = "alternating"

    @classmethod
    def parse(cls, name: str | SelectionPolicy) -> SelectionPolicy:
        if isinstance(name, cls):
            return name
        key = "".join(ch for ch in str(name).lower() if ch.isalnum())
        for member in cls:
            if member.value.replace("_", "") == key:
                return member
        raise ValueError(
            f"unknown selection policy {name!r}; expected one of {[m.value for m in cls]}"
        )


class EquilibriumKind(str, Enum):
    NO_TRANSMIT = "NoTransmit"
    PURE_UNIQUE = "PureUnique"
    PURE_SELECTED = "PureSelected"
    MIXED_SAMPLED = "MixedSampled"


@dataclass(frozen=True)
class SimConfig:
    horizon: int
    player1: PlayerParams
    player2: PlayerParams
    policy: SelectionPolicy = SelectionPolicy.MIXED_SAMPLING
    seed: int = 0
    # end the run right after the slot that spends the last token
    stop_when_exhausted: bool = False

    def __post_init__(self):
        if isinstance(self.horizon, bool) or int(self.horizon) != self.horizon or self.horizon < 1:
            raise ValueError(f"horizon must be a positive integer, got {self.horizon!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        object.__setattr__(self, "horizon", int(self.horizon))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "policy", SelectionPolicy.parse(self.policy))


@dataclass(frozen=True)
class SimState:
    slot: int
    aoi: int
    tokens1: int
    tokens2: int
    multi_ne_slots: int = 0  # slots so far resolved by the selection policy

    @classmethod
    def initial(cls, config: SimConfig) -> SimState:
        return cls(0, 0, config.player1.tokens, config.player2.tokens)


@dataclass(frozen=True)
class TraceEvent:
    slot: int
    aoi_before: int
    action1: int
    action2: int
    kind: EquilibriumKind
    tokens1_after: int
    tokens2_after: int

    @property
    def tokens_after(self) -> tuple[int, int]:
        return (self.tokens1_after, self.tokens2_after)

    @property
    def transmitted(self) -> bool:
        return bool(self.action1 or self.action2)


@dataclass
class SimTrace:
    config: SimConfig
    events: list[TraceEvent]
    aoi_series: np.ndarray = field(repr=False)

    @property
    def horizon(self) -> int:
        """Number of simulated slots (shorter than the configured horizon
        when the run stops on token exhaustion)."""
        return len(self.events)

    @property
    def update_slots(self) -> list[int]:
        return [e.slot for e in self.events if e.transmitted]

    @property
    def transmissions(self) -> tuple[int, int]:
        return (
            sum(e.action1 for e in self.events),
            sum(e.action2 for e in self.events),
        )

    @property
    def collisions(self) -> int:
        return sum(1 for e in self.events if e.action1 and e.action2)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def stage_game(state: SimState, config: SimConfig) -> StageGame:
    return StageGame(
        float(state.aoi),
        config.player1.with_tokens(state.tokens1),
        config.player2.with_tokens(state.tokens2),
    )


_POLICY_ORDER = (ActionProfile(1, 0), ActionProfile(0, 1), ActionProfile(1, 1))


def _first_listed(pure) -> ActionProfile:
    return next(p for p in _POLICY_ORDER if p in pure)


def _sample_mixed(eqs: EquilibriumSet, rng: np.random.Generator):
    if eqs.mixed is None:
        return _first_listed(eqs.pure), EquilibriumKind.PURE_SELECTED
    u1, u2 = rng.random(2)
    profile = ActionProfile(int(u1 < eqs.mixed.p1), int(u2 < eqs.mixed.p2))
    return profile, EquilibriumKind.MIXED_SAMPLED


def select_profile(
    eqs: EquilibriumSet,
    state: SimState,
    policy: SelectionPolicy,
    rng: np.random.Generator,
) -> tuple[ActionProfile, EquilibriumKind]:
    """Pick the profile played in this slot.

    A unique equilibrium is always played.  If waiting, (0,0), is among
    several equilibria (a sensor exactly at its threshold) the sensors wait.
    Otherwise ``policy`` decides; only mixed sampling, and token-priority
    ties, consume random numbers.
    """
    pure = eqs.pure
    silent = ActionProfile(0, 0)
    if not pure:
        raise RuntimeError("stage game without a pure equilibrium")
    if len(pure) == 1 or silent in pure:
        profile = pure[0] if len(pure) == 1 else silent
        kind = EquilibriumKind.NO_TRANSMIT if profile == silent else EquilibriumKind.PURE_UNIQUE
        return profile, kind

    policy = SelectionPolicy.parse(policy)
    if policy is SelectionPolicy.MIXED_SAMPLING:
        return _sample_mixed(eqs, rng)
    if policy is SelectionPolicy.LEXICOGRAPHIC:
        return _first_listed(pure), EquilibriumKind.PURE_SELECTED
    if policy is SelectionPolicy.TOKEN_PRIORITY:
        if state.tokens1 > state.tokens2 and (1, 0) in pure:
            return ActionProfile(1, 0), EquilibriumKind.PURE_SELECTED
        if state.tokens2 > state.tokens1 and (0, 1) in pure:
            return ActionProfile(0, 1), EquilibriumKind.PURE_SELECTED
        return _sample_mixed(eqs, rng)
    # alternating
    want = ActionProfile(1, 0) if state.multi_ne_slots % 2 == 0 else ActionProfile(0, 1)
    if want in pure:
        return want, EquilibriumKind.PURE_SELECTED
    return _first_listed(pure), EquilibriumKind.PURE_SELECTED


def step(state: SimState, config: SimConfig, rng: np.random.Generator) -> tuple[SimState, TraceEvent]:
    if state.slot >= config.horizon:
        raise ValueError(f"slot {state.slot} is past the horizon {config.horizon}")
    eqs = equilibrium_set(stage_game(state, config))
    profile, kind = select_profile(eqs, state, config.policy, rng)
    t1 = state.tokens1 - profile.s1
    t2 = state.tokens2 - profile.s2
    multi = state.multi_ne_slots + (kind in (EquilibriumKind.PURE_SELECTED, EquilibriumKind.MIXED_SAMPLED))
    sent = profile.s1 or profile.s2
    nxt = SimState(state.slot + 1, 0 if sent else state.aoi + 1, t1, t2, multi)
    event = TraceEvent(state.slot, state.aoi, profile.s1, profile.s2, kind, t1, t2)
    return nxt, event


def _first_active_aoi(aoi: int, tokens: int, params: PlayerParams) -> float:
    """Smallest integer AoI >= ``aoi`` at which this player is no longer
    strictly below its threshold (inf if it has no tokens)."""
    if tokens < 1:
        return math.inf
    theta = threshold(params.with_tokens(tokens))
    d = max(aoi, math.ceil(theta - TOL))
    # same comparison the solver makes, so the skip never overshoots
    while d > aoi and (d - 1) - theta >= -TOL:
        d -= 1
    while d - theta < -TOL:
        d += 1
    return d


def quiet_slots(state: SimState, config: SimConfig) -> int | float:
    """Number of upcoming slots whose only equilibrium is (0,0).

    These slots cannot transmit and draw no random numbers, so they can
    be skipped without changing the outcome.
    """
    d = min(
        _first_active_aoi(state.aoi, state.tokens1, config.player1),
        _first_active_aoi(state.aoi, state.tokens2, config.player2),
    )
    return d - state.aoi


def _play(config: SimConfig) -> Iterator[tuple[int, TraceEvent | None]]:
    """Yield ``(quiet, event)``: ``quiet`` skipped silent slots followed by
    one played slot (``event`` is None once the horizon is reached)."""
    rng = make_rng(config.seed)
    state = SimState.initial(config)
    while state.slot < config.horizon:
        quiet = min(quiet_slots(state, config), config.horizon - state.slot)
        if quiet:
            state = replace(state, slot=state.slot + quiet, aoi=state.aoi + quiet)
            if state.slot >= config.horizon:
                yield quiet, None
                return
        state, event = step(state, config, rng)
        yield quiet, event
        if config.stop_when_exhausted and state.tokens1 == 0 and state.tokens2 == 0:
            return


def simulate(config: SimConfig) -> SimTrace:
    """Run the repeated game from AoI 0 with the initial tokens.

    Deterministic for a given config; equivalent to calling ``step`` from
    ``SimState.initial(config)`` with ``make_rng(config.seed)``.
    """
    events: list[TraceEvent] = []
    slot, aoi = 0, 0
    tokens = (config.player1.tokens, config.player2.tokens)
    for quiet, event in _play(config):
        for k in range(quiet):
            events.append(TraceEvent(slot + k, aoi + k, 0, 0, EquilibriumKind.NO_TRANSMIT, *tokens))
        slot, aoi = slot + quiet, aoi + quiet
        if event is None:
            break
        events.append(event)
        slot += 1
        aoi = 0 if event.transmitted else aoi + 1
        tokens = event.tokens_after
    series = np.empty(len(events) + 1, dtype=np.int64)
    series[0] = 0
    for i, e in enumerate(events):
        series[i + 1] = 0 if e.transmitted else e.aoi_before + 1
    return SimTrace(config, events, series)


def transmission_slots(config: SimConfig) -> tuple[int, list[int]]:
    """``(slots simulated, slots with at least one transmission)`` without
    materialising the trace; same outcome as ``simulate``."""
    slots = []
    end = 0
    for quiet, event in _play(config):
        end += quiet
        if event is None:
            break
        end += 1
        if event.transmitted:
            slots.append(event.slot)
    return end, slots
