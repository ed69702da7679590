"""Average AoI, price of delayed updates, and (cost, weight) sweeps."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baseline import average_aoi_from_updates, optimal_average_aoi
from .game_core import PlayerParams
from .repeated_game import SelectionPolicy, SimConfig, SimTrace, transmission_slots

HORIZON_MODES = ("exhausted", "fixed")


def average_aoi(trace: SimTrace) -> float:
    return float(np.sum(trace.aoi_series)) / trace.horizon


def podu(avg_ne: float, avg_opt: float) -> float:
    """Ratio of the equilibrium-play average AoI to the optimal one."""
    if not avg_opt > 0:
        raise ZeroDivisionError(f"optimal average AoI must be positive, got {avg_opt}")
    return avg_ne / avg_opt


class SweepError(RuntimeError):
    def __init__(self, row: int, col: int, cause: Exception):
        super().__init__(f"sweep cell (row={row}, col={col}) failed: {cause}")
        self.row, self.col = row, col


@dataclass(frozen=True)
class GridSpec:
    """Axes plus the per-run template shared by all cells.

    ``horizon_mode="exhausted"`` stops each run right after its last token is
    spent (``horizon`` is then only a cap) and compares it with the optimum
    over that same length; ``"fixed"`` always runs ``horizon`` slots.
    """

    c_values: tuple[float, ...]
    alpha_values: tuple[float, ...]
    horizon: int = 100_000
    tokens1: int = 8
    tokens2: int = 16
    policy: SelectionPolicy = SelectionPolicy.MIXED_SAMPLING
    runs_per_cell: int = 16
    base_seed: int = 0
    horizon_mode: str = "exhausted"

    def __post_init__(self):
        c = tuple(float(v) for v in self.c_values)
        a = tuple(float(v) for v in self.alpha_values)
        for name, axis in (("c_values", c), ("alpha_values", a)):
            if not axis:
                raise ValueError(f"{name} must not be empty")
            if any(v <= 0 for v in axis):
                raise ValueError(f"{name} must be > 0")
            if any(y <= x for x, y in zip(axis, axis[1:])):
                raise ValueError(f"{name} must be strictly ascending")
        if self.runs_per_cell < 1:
            raise ValueError("runs_per_cell must be >= 1")
        if self.horizon_mode not in HORIZON_MODES:
            raise ValueError(f"horizon_mode must be one of {HORIZON_MODES}")
        object.__setattr__(self, "c_values", c)
        object.__setattr__(self, "alpha_values", a)
        object.__setattr__(self, "policy", SelectionPolicy.parse(self.policy))

    @property
    def budget(self) -> int:
        return self.tokens1 + self.tokens2

    def run_config(self, c: float, alpha: float, seed: int) -> SimConfig:
        return SimConfig(
            self.horizon,
            PlayerParams(c, alpha, self.tokens1),
            PlayerParams(c, alpha, self.tokens2),
            self.policy,
            seed,
            stop_when_exhausted=self.horizon_mode == "exhausted",
        )


@dataclass
class PoduGrid:
    spec: GridSpec
    podu: np.ndarray  # rows follow alpha_values, columns c_values
    mean_ne_aoi: np.ndarray = field(repr=False)

    @property
    def c_values(self):
        return self.spec.c_values

    @property
    def alpha_values(self):
        return self.spec.alpha_values

    def fraction_below(self, level: float) -> float:
        return float(np.mean(self.podu < level))

    def argmax(self) -> tuple[float, float]:
        """(c, alpha) of the largest cell."""
        row, col = np.unravel_index(np.argmax(self.podu), self.podu.shape)
        return self.c_values[col], self.alpha_values[row]


def cell_seed(base_seed: int, row: int, col: int, run: int) -> int:
    ss = np.random.SeedSequence([base_seed, row, col, run])
    return int(ss.generate_state(1, np.uint64)[0])


def cell_podu(spec: GridSpec, row: int, col: int) -> tuple[float, float]:
    """Mean per-run PoDU and mean equilibrium average AoI of one cell."""
    c, alpha = spec.c_values[col], spec.alpha_values[row]
    ratios, avgs = [], []
    for run in range(spec.runs_per_cell):
        cfg = spec.run_config(c, alpha, cell_seed(spec.base_seed, row, col, run))
        horizon, slots = transmission_slots(cfg)
        avg = average_aoi_from_updates(horizon, slots)
        avgs.append(avg)
        ratios.append(podu(avg, optimal_average_aoi(horizon, spec.budget)))
    return float(np.mean(ratios)), float(np.mean(avgs))


def _row(spec: GridSpec, row: int) -> list[tuple[float, float]]:
    out = []
    for col in range(len(spec.c_values)):
        try:
            out.append(cell_podu(spec, row, col))
        except Exception as exc:
            raise SweepError(row, col, exc) from exc
    return out


def sweep_podu(spec: GridSpec, workers: int = 1) -> PoduGrid:
    """PoDU of every (c, alpha) cell, both sensors sharing the cell's values.

    Each run's seed depends only on (base_seed, row, col, run), so the
    result does not depend on ``workers``.
    """
    rows = range(len(spec.alpha_values))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_row, [spec] * len(rows), rows))
    else:
        results = [_row(spec, r) for r in rows]
    arr = np.array(results, dtype=float)
    return PoduGrid(spec, arr[..., 0], arr[..., 1])
