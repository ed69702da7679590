"""
Playing the game slot after slot
================================

Tokens drain and the AoI resets whenever anyone transmits.  Expensive
transmissions make the sensors patient; cheap ones make them collide.
"""

import numpy as np

from aoigame import PlayerParams, SimConfig, simulate

patient = SimConfig(3356, PlayerParams(100, 200, 8), PlayerParams(100, 200, 16), seed=0)
trace = simulate(patient)
sends = [e for e in trace.events if e.transmitted]
print("first eight senders:", [1 if e.action1 else 2 for e in sends[:8]])
print("AoI at those sends: ", [e.aoi_before for e in sends[:8]])
print("tokens left:", trace.events[-1].tokens_after, "collisions:", trace.collisions)

# A cheap network over a short horizon: updates come every few slots.
eager = SimConfig(66, PlayerParams(1, 2, 8), PlayerParams(1, 2, 16), seed=7)
trace = simulate(eager)
print("update slots:", trace.update_slots)
print("mean gap:", np.diff(trace.update_slots).mean(), "collisions:", trace.collisions)

# A crude sawtooth of the AoI, one character per slot.
print("".join(str(min(int(a), 9)) for a in trace.aoi_series))
