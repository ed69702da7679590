"""Two-sensor age-of-information game: stage-game equilibria, repeated play,
centralised baseline and the price of delayed updates."""

__version__ = "0.1.0"

from .baseline import (
    Schedule,
    brute_force_optimal,
    optimal_average_aoi,
    optimal_schedule,
    schedule_average_aoi,
)
from .game_core import (
    Action,
    ActionProfile,
    InfeasibleActionError,
    PayoffBimatrix,
    PlayerParams,
    StageGame,
    payoff_bimatrix,
    utility,
)
from .metrics import GridSpec, PoduGrid, average_aoi, podu, sweep_podu
from .repeated_game import (
    EquilibriumKind,
    SelectionPolicy,
    SimConfig,
    SimState,
    SimTrace,
    TraceEvent,
    select_profile,
    simulate,
    step,
)
from .static_solver import (
    BestResponse,
    CriticalValues,
    EquilibriumSet,
    MixedProfile,
    best_response,
    critical_alpha,
    critical_cost,
    critical_tokens,
    equilibrium_set,
    mixed_nash,
    pure_nash,
    threshold,
)
