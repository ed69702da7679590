"""
How much does selfishness cost?
===============================

A central scheduler with the same 24 tokens spaces updates evenly.  The
ratio of the game's average AoI to that optimum is the price of delayed
updates (PoDU).
"""

from aoigame import (
    PlayerParams,
    SimConfig,
    average_aoi,
    brute_force_optimal,
    optimal_average_aoi,
    optimal_schedule,
    podu,
    simulate,
)

# the even schedule is provably optimal; small cases can be checked by brute force
print(optimal_schedule(12, 3).update_slots)
print(optimal_average_aoi(12, 3), brute_force_optimal(12, 3))

for c, alpha in ((100, 200), (1, 200), (100, 1)):
    cfg = SimConfig(100_000, PlayerParams(c, alpha, 8), PlayerParams(c, alpha, 16),
                    seed=1, stop_when_exhausted=True)
    trace = simulate(cfg)
    ne, opt = average_aoi(trace), optimal_average_aoi(trace.horizon, 24)
    print(f"c={c:3d} alpha={alpha:3d}  T={trace.horizon:5d}  PoDU={podu(ne, opt):.3f}")
