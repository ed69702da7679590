import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aoigame.game_core import ActionProfile, PlayerParams
from aoigame.repeated_game import (
    EquilibriumKind,
    SelectionPolicy,
    SimConfig,
    SimState,
    make_rng,
    quiet_slots,
    select_profile,
    simulate,
    step,
    transmission_slots,
)
from aoigame.static_solver import TOL, EquilibriumSet, MixedProfile, threshold

HIGH = (PlayerParams(100, 200, 8), PlayerParams(100, 200, 16))
LOW = (PlayerParams(1, 2, 8), PlayerParams(1, 2, 16))
BOTH_SEND = (ActionProfile(1, 0), ActionProfile(0, 1))


def config(players, horizon, policy=SelectionPolicy.MIXED_SAMPLING, seed=0, **kw):
    return SimConfig(horizon, players[0], players[1], policy, seed, **kw)


def step_by_step(cfg):
    rng = make_rng(cfg.seed)
    state = SimState.initial(cfg)
    events = []
    while state.slot < cfg.horizon:
        state, ev = step(state, cfg, rng)
        events.append(ev)
        if cfg.stop_when_exhausted and state.tokens1 == state.tokens2 == 0:
            break
    return events


@pytest.mark.parametrize("policy", list(SelectionPolicy))
def test_unique_equilibrium_is_played(policy):
    state = SimState(0, 0, 8, 16)
    rng = make_rng(0)
    eqs = EquilibriumSet((ActionProfile(0, 0),))
    assert select_profile(eqs, state, policy, rng) == ((0, 0), EquilibriumKind.NO_TRANSMIT)
    eqs = EquilibriumSet((ActionProfile(0, 1),))
    assert select_profile(eqs, state, policy, rng) == ((0, 1), EquilibriumKind.PURE_UNIQUE)


def test_lexicographic_picks_player_one():
    eqs = EquilibriumSet(BOTH_SEND, MixedProfile(0.5, 0.5))
    profile, kind = select_profile(eqs, SimState(5, 5, 3, 3), SelectionPolicy.LEXICOGRAPHIC, make_rng(0))
    assert profile == (1, 0) and kind is EquilibriumKind.PURE_SELECTED


def test_token_priority():
    eqs = EquilibriumSet(BOTH_SEND, MixedProfile(0.5, 0.5))
    pick = lambda t1, t2: select_profile(eqs, SimState(5, 5, t1, t2), SelectionPolicy.TOKEN_PRIORITY, make_rng(0))
    assert pick(4, 3)[0] == (1, 0)
    assert pick(3, 4)[0] == (0, 1)
    assert pick(3, 3)[1] is EquilibriumKind.MIXED_SAMPLED


def test_alternating_follows_multi_ne_count():
    eqs = EquilibriumSet(BOTH_SEND, MixedProfile(0.5, 0.5))
    pol = SelectionPolicy.ALTERNATING
    assert select_profile(eqs, SimState(5, 5, 3, 3, 0), pol, make_rng(0))[0] == (1, 0)
    assert select_profile(eqs, SimState(5, 5, 3, 3, 1), pol, make_rng(0))[0] == (0, 1)


def test_waiting_preferred_at_exact_threshold():
    eqs = EquilibriumSet((ActionProfile(1, 0), ActionProfile(0, 0)))
    assert select_profile(eqs, SimState(3, 3, 1, 1), SelectionPolicy.LEXICOGRAPHIC, make_rng(0))[0] == (0, 0)


def test_mixed_sampling_uses_probabilities():
    rng = make_rng(1)
    eqs = EquilibriumSet(BOTH_SEND, MixedProfile(1.0, 0.0))
    assert select_profile(eqs, SimState(5, 5, 3, 3), SelectionPolicy.MIXED_SAMPLING, rng)[0] == (1, 0)
    eqs = EquilibriumSet(BOTH_SEND, MixedProfile(0.3, 0.6))
    draws = [select_profile(eqs, SimState(5, 5, 3, 3), "mixed_sampling", rng)[0] for _ in range(4000)]
    freq = np.mean(np.array(draws), axis=0)
    assert freq == pytest.approx([0.3, 0.6], abs=0.03)


def test_policy_names():
    assert SelectionPolicy.parse("MixedSampling") is SelectionPolicy.MIXED_SAMPLING
    assert SelectionPolicy.parse("token-priority") is SelectionPolicy.TOKEN_PRIORITY
    with pytest.raises(ValueError):
        SelectionPolicy.parse("random")


def test_step_at_zero_aoi():
    cfg = config(LOW, 10)
    nxt, ev = step(SimState(0, 0, 8, 16), cfg, make_rng(0))
    assert (ev.action1, ev.action2) == (0, 0) and nxt.aoi == 1 and nxt.slot == 1


def test_step_just_below_threshold():
    cfg = config(HIGH, 3356)
    nxt, ev = step(SimState(112, 112, 8, 16), cfg, make_rng(0))
    assert (ev.action1, ev.action2) == (0, 0) and nxt.aoi == 113


def test_step_above_one_threshold():
    cfg = config(HIGH, 3356)
    nxt, ev = step(SimState(113, 113, 8, 16), cfg, make_rng(0))
    assert (ev.action1, ev.action2) == (0, 1)
    assert ev.kind is EquilibriumKind.PURE_UNIQUE
    assert (nxt.tokens1, nxt.tokens2) == (8, 15) and nxt.aoi == 0


def test_step_past_horizon_rejected():
    with pytest.raises(ValueError):
        step(SimState(10, 0, 1, 1), config(LOW, 10), make_rng(0))


def test_simulate_without_tokens_is_a_ramp():
    empty = PlayerParams(1, 2, 0)
    trace = simulate(SimConfig(10, empty, empty))
    assert trace.aoi_series.tolist() == list(range(11))
    assert trace.transmissions == (0, 0)


def test_high_cost_run_starts_with_player_two():
    trace = simulate(config(HIGH, 3356))
    sends = [e for e in trace.events if e.transmitted]
    assert all((e.action1, e.action2) == (0, 1) for e in sends[:8])
    assert sends[0].slot == 113 and sends[0].aoi_before == 113
    # thresholds 112.12, 112.91, 113.80, 114.80, 116.01, 117.43, 119.06, 121.07
    assert [e.aoi_before for e in sends[:8]] == [113, 113, 114, 115, 117, 118, 120, 122]


def test_low_cost_run_sends_often():
    trace = simulate(config(LOW, 66, seed=3))
    gaps = np.diff(trace.update_slots)
    # every threshold is below 3, so an update can follow two slots after the last
    assert gaps.min() >= 2 and gaps.mean() <= 4
    assert sum(trace.transmissions) == 24 - sum(trace.events[-1].tokens_after)


@pytest.mark.parametrize("policy", list(SelectionPolicy))
@pytest.mark.parametrize("players, horizon", [(HIGH, 3356), (LOW, 66), (LOW, 200)])
def test_simulate_equals_stepping(policy, players, horizon):
    for seed in range(3):
        cfg = config(players, horizon, policy, seed)
        assert simulate(cfg).events == step_by_step(cfg)


def test_stop_when_exhausted():
    cfg = config(LOW, 10_000, stop_when_exhausted=True)
    trace = simulate(cfg)
    assert trace.events[-1].tokens_after == (0, 0)
    assert trace.events[-1].transmitted
    assert trace.aoi_series[-1] == 0
    assert trace.events == step_by_step(cfg)
    horizon, slots = transmission_slots(cfg)
    assert horizon == trace.horizon and slots == trace.update_slots


def test_quiet_slots_never_skip_a_decision():
    cfg = config(HIGH, 3356)
    assert quiet_slots(SimState(0, 0, 8, 16), cfg) == 113
    assert quiet_slots(SimState(113, 113, 8, 16), cfg) == 0
    assert quiet_slots(SimState(5, 5, 0, 0), cfg) == float("inf")


player = st.builds(
    PlayerParams,
    st.floats(0.01, 30),
    st.floats(0, 60),
    st.integers(0, 12),
)


@settings(max_examples=60, deadline=None)
@given(player, player, st.integers(1, 400), st.sampled_from(list(SelectionPolicy)), st.integers(0, 2**64 - 1))
def test_trace_invariants(p1, p2, horizon, policy, seed):
    cfg = SimConfig(horizon, p1, p2, policy, seed)
    trace = simulate(cfg)
    series = trace.aoi_series
    assert len(trace.events) == horizon and len(series) == horizon + 1
    assert series[0] == 0
    n1, n2 = trace.transmissions
    t1, t2 = trace.events[-1].tokens_after
    assert (p1.tokens - t1) + (p2.tokens - t2) == n1 + n2
    prev = (p1.tokens, p2.tokens)
    for t, e in enumerate(trace.events):
        assert e.slot == t and e.aoi_before == series[t]
        assert series[t + 1] == (0 if e.transmitted else series[t] + 1)
        assert e.tokens1_after <= prev[0] and e.tokens2_after <= prev[1]
        for acted, tokens, params in ((e.action1, prev[0], p1), (e.action2, prev[1], p2)):
            if acted:
                assert tokens >= 1
                assert e.aoi_before >= threshold(params.with_tokens(tokens)) - TOL
        prev = e.tokens_after
    assert simulate(cfg).events == trace.events
    assert np.array_equal(simulate(cfg).aoi_series, series)


@settings(max_examples=30, deadline=None)
@given(st.floats(1, 100), st.floats(1, 200), st.integers(1, 10), st.integers(1, 10), st.integers(0, 1000))
def test_richer_player_sends_while_tokens_differ(c, a, g1, g2, seed):
    # holds whenever the two thresholds are crossed at different integer AoIs
    p1, p2 = PlayerParams(c, a, g1), PlayerParams(c, a, g2)
    trace = simulate(SimConfig(100_000, p1, p2, seed=seed, stop_when_exhausted=True))
    first_slot = lambda p, g: math.floor(threshold(p.with_tokens(g)) + TOL) + 1
    tokens = (g1, g2)
    for e in trace.events:
        if e.transmitted and tokens[0] != tokens[1] and min(tokens) > 0:
            rich, poor = (0, 1) if tokens[0] > tokens[1] else (1, 0)
            params = (p1, p2)
            if first_slot(params[rich], tokens[rich]) < first_slot(params[poor], tokens[poor]):
                assert (e.action1, e.action2) == ((1, 0) if rich == 0 else (0, 1))
        tokens = e.tokens_after
