"""
Sweeping cost and incentive weight
==================================

Each cell averages several seeded runs.  The inefficient corner is cheap
transmissions paired with a heavy token incentive.
"""

import numpy as np

from aoigame import GridSpec, sweep_podu

spec = GridSpec(
    c_values=tuple(np.linspace(1, 100, 8)),
    alpha_values=tuple(np.linspace(1, 200, 8)),
    runs_per_cell=4,
)
grid = sweep_podu(spec)

np.set_printoptions(precision=2, suppress=True)
print("rows: alpha ascending, columns: cost ascending")
print(grid.podu)
print("worst cell (c, alpha):", tuple(round(v, 1) for v in grid.argmax()))
print("share of cells under 1.1:", grid.fraction_below(1.1))
