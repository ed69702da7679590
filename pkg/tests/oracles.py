"""Independent reference computations the library is checked against.

None of these call into the solver or simulator paths they verify.
"""

import math

from scipy.optimize import brentq


def table_payoffs(aoi, c1, a1, g1, c2, a2, g2):
    """Normal-form payoffs written out cell by cell; ``None`` where a
    zero-token player would have to transmit."""
    def row_player(s_me, s_other, c, a, g):
        if s_me == 1 and g == 0:
            return None
        if s_me == 1:
            return -c + a * math.log(g)
        if s_other == 1:
            return a * math.log(g + 1)
        return -aoi + a * math.log(g + 1)

    cells = {}
    for s1 in (0, 1):
        for s2 in (0, 1):
            u1 = row_player(s1, s2, c1, a1, g1)
            u2 = row_player(s2, s1, c2, a2, g2)
            if (s1 == 1 and g1 == 0) or (s2 == 1 and g2 == 0):
                cells[s1, s2] = None
            else:
                cells[s1, s2] = (u1, u2)
    return cells


def brute_force_pure_nash(cells):
    """Profiles where no player has a strictly profitable feasible deviation."""
    found = set()
    for (s1, s2), u in cells.items():
        if u is None:
            continue
        alt1 = cells[1 - s1, s2]
        alt2 = cells[s1, 1 - s2]
        if alt1 is not None and alt1[0] > u[0]:
            continue
        if alt2 is not None and alt2[1] > u[1]:
            continue
        found.add((s1, s2))
    return found


def indifference_root(aoi, c, a, g):
    """Opponent probability equalising transmit and silence, by root finding."""
    def gap(p):
        transmit = -c + a * math.log(g)
        silent = p * a * math.log(g + 1) + (1 - p) * (-aoi + a * math.log(g + 1))
        return transmit - silent

    if abs(gap(0.0)) < 1e-12:
        return 0.0
    return brentq(gap, 0.0, 1.0, xtol=1e-15, rtol=1e-15)


def literal_aoi_series(horizon, update_slots):
    """delta(0..T) by stepping the reset rule one slot at a time."""
    updates = set(update_slots)
    series = [0]
    for t in range(horizon):
        series.append(0 if t in updates else series[-1] + 1)
    return series
