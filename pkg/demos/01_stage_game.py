"""
One slot, two sensors
=====================

Each sensor weighs the AoI it would suffer by staying quiet against the
cost of a transmission and the value of keeping a token in reserve.
"""

from aoigame import PlayerParams, StageGame, equilibrium_set, payoff_bimatrix, threshold

# same cost and weight, but sensor 2 holds twice the tokens
alice = PlayerParams(cost=100, incentive_weight=200, tokens=8)
bob = PlayerParams(cost=100, incentive_weight=200, tokens=16)
print(f"thresholds: {threshold(alice):.3f} and {threshold(bob):.3f}")

# Below both thresholds nobody moves; between them only the richer
# sensor sends; above both, either one sending is stable and a mixed
# equilibrium appears as well.
for aoi in (100, 113, 130):
    eqs = equilibrium_set(StageGame(aoi, alice, bob))
    pure = [tuple(p) for p in eqs.pure]
    mixed = None if eqs.mixed is None else (round(eqs.mixed.p1, 4), round(eqs.mixed.p2, 4))
    print(f"aoi={aoi:4d}  pure={pure}  mixed={mixed}")

# The payoff table itself; NaN would mark an action the sensor cannot afford.
table = payoff_bimatrix(StageGame(130, alice, bob))
for s1 in (0, 1):
    for s2 in (0, 1):
        u1, u2 = table.payoffs[s1, s2]
        print(f"  ({s1},{s2}): {u1:8.2f} {u2:8.2f}")
