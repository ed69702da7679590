"""Config parsing, result files and the ``aoigame`` command line.

Configs are YAML (JSON is accepted too).  A minimal simulate config::

    horizon: 66
    players:
      - {c: 1, alpha: 2, g: 8}
      - {c: 1, alpha: 2, g: 16}

Shared player values may be given at the top level instead, with ``g`` a
pair: ``{c: 100, alpha: 200, g: [8, 16]}``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .baseline import optimal_schedule, schedule_average_aoi
from .game_core import PlayerParams, StageGame, payoff_bimatrix
from .metrics import HORIZON_MODES, GridSpec, average_aoi, sweep_podu
from .repeated_game import SelectionPolicy, SimConfig, simulate
from .static_solver import (
    critical_values,
    equilibrium_set,
    printed_mixed_probability,
    threshold,
)

COMMANDS = ("solve", "simulate", "baseline", "sweep")
TRACE_COLUMNS = (
    "slot", "aoi_before", "action1", "action2",
    "tokens1_after", "tokens2_after", "equilibrium_kind",
)
GRID_COLUMNS = ("c", "alpha", "podu", "runs")

DEFAULT_POLICY = SelectionPolicy.MIXED_SAMPLING
DEFAULT_RUNS_PER_CELL = 16
DEFAULT_SEED = 0


class ConfigError(ValueError):
    def __init__(self, message: str, key: str | None = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key
        self.message = message


@dataclass(frozen=True)
class BaselineSpec:
    horizon: int
    budget: int


@dataclass
class RunManifest:
    command: str
    config_digest: str
    seed: int
    tool_version: str
    outputs: list[str] = field(default_factory=list)


# -- parsing -----------------------------------------------------------------


def _num(doc, key, path, *, integer=False, minimum=None, default=None):
    if key not in doc:
        if default is None:
            raise ConfigError("missing required key", path)
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", path)
    if integer and int(value) != value:
        raise ConfigError(f"expected an integer, got {value!r}", path)
    if minimum is not None and not value >= minimum:
        raise ConfigError(f"must be >= {minimum}, got {value!r}", path)
    return int(value) if integer else float(value)


def _players(doc) -> tuple[PlayerParams, PlayerParams]:
    if "players" in doc:
        raw = doc["players"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise ConfigError("expected a list of two players", "players")
        entries = [(p, f"players[{i}]") for i, p in enumerate(raw)]
    else:
        entries = []
        for i in range(2):
            entry = {}
            for key in ("c", "alpha", "g"):
                if key not in doc:
                    continue
                value = doc[key]
                if isinstance(value, list):
                    if len(value) != 2:
                        raise ConfigError("expected a scalar or a pair", key)
                    value = value[i]
                entry[key] = value
            entries.append((entry, f"players[{i}]"))
    players = []
    for entry, path in entries:
        if not isinstance(entry, dict):
            raise ConfigError("expected a mapping with c, alpha, g", path)
        players.append(
            PlayerParams(
                _num(entry, "c", f"{path}.c", minimum=0),
                _num(entry, "alpha", f"{path}.alpha", minimum=0),
                _num(entry, "g", f"{path}.g", integer=True, minimum=0),
            )
        )
    return players[0], players[1]


def _policy(doc) -> SelectionPolicy:
    try:
        return SelectionPolicy.parse(doc.get("policy", DEFAULT_POLICY))
    except ValueError as exc:
        raise ConfigError(str(exc), "policy") from None


def _axis(doc, key):
    if key not in doc:
        raise ConfigError("missing required key", key)
    raw = doc[key]
    if isinstance(raw, dict):
        start = _num(raw, "start", f"{key}.start")
        stop = _num(raw, "stop", f"{key}.stop")
        num = _num(raw, "num", f"{key}.num", integer=True, minimum=1)
        values = np.linspace(start, stop, num).tolist()
    elif isinstance(raw, list) and raw:
        values = [_num({"v": v}, "v", f"{key}[{i}]") for i, v in enumerate(raw)]
    else:
        raise ConfigError("expected a non-empty list or {start, stop, num}", key)
    if any(v <= 0 for v in values):
        raise ConfigError("axis values must be > 0", key)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError("axis values must be strictly ascending", key)
    return tuple(values)


def _infer_kind(doc) -> str:
    if "kind" in doc:
        kind = doc["kind"]
        if kind not in COMMANDS:
            raise ConfigError(f"unknown kind {kind!r}; expected one of {COMMANDS}", "kind")
        return kind
    if "c_values" in doc or "alpha_values" in doc:
        return "sweep"
    if "aoi" in doc:
        return "solve"
    if "budget" in doc:
        return "baseline"
    return "simulate"


def parse_config(text: str, kind: str | None = None):
    """Parse a YAML/JSON document into a resolved config with defaults applied.

    Returns a ``SimConfig`` (simulate), ``StageGame`` (solve),
    ``BaselineSpec`` (baseline) or ``GridSpec`` (sweep).
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed document: {exc}".replace("\n", " ")) from None
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a mapping")
    kind = kind or _infer_kind(doc)
    if kind not in COMMANDS:
        raise ConfigError(f"unknown kind {kind!r}", "kind")

    if kind == "solve":
        p1, p2 = _players(doc)
        return StageGame(_num(doc, "aoi", "aoi", minimum=0), p1, p2)

    if kind == "baseline":
        horizon = _num(doc, "horizon", "horizon", integer=True, minimum=1)
        if "budget" in doc:
            budget = _num(doc, "budget", "budget", integer=True, minimum=0)
        else:
            p1, p2 = _players(doc)
            budget = p1.tokens + p2.tokens
        return BaselineSpec(horizon, budget)

    if kind == "simulate":
        p1, p2 = _players(doc)
        return SimConfig(
            _num(doc, "horizon", "horizon", integer=True, minimum=1),
            p1,
            p2,
            _policy(doc),
            _num(doc, "seed", "seed", integer=True, minimum=0, default=DEFAULT_SEED),
            bool(doc.get("stop_when_exhausted", False)),
        )

    # sweep
    tokens = doc.get("tokens", doc.get("g", [8, 16]))
    if not isinstance(tokens, list) or len(tokens) != 2:
        raise ConfigError("expected a pair of token counts", "tokens")
    mode = doc.get("horizon_mode", "exhausted")
    if mode not in HORIZON_MODES:
        raise ConfigError(f"expected one of {HORIZON_MODES}, got {mode!r}", "horizon_mode")
    seed_key = "base_seed" if "base_seed" in doc else "seed"
    return GridSpec(
        _axis(doc, "c_values"),
        _axis(doc, "alpha_values"),
        horizon=_num(doc, "horizon", "horizon", integer=True, minimum=1, default=100_000),
        tokens1=_num({"g": tokens[0]}, "g", "tokens[0]", integer=True, minimum=0),
        tokens2=_num({"g": tokens[1]}, "g", "tokens[1]", integer=True, minimum=0),
        policy=_policy(doc),
        runs_per_cell=_num(
            doc, "runs_per_cell", "runs_per_cell", integer=True, minimum=1,
            default=DEFAULT_RUNS_PER_CELL,
        ),
        base_seed=_num(doc, seed_key, seed_key, integer=True, minimum=0, default=DEFAULT_SEED),
        horizon_mode=mode,
    )


def _player_dict(p: PlayerParams) -> dict:
    return {"c": p.cost, "alpha": p.incentive_weight, "g": p.tokens}


def config_to_dict(config) -> dict:
    """Resolved config as a plain document that ``parse_config`` reads back."""
    if isinstance(config, StageGame):
        return {"kind": "solve", "aoi": config.aoi,
                "players": [_player_dict(config.player1), _player_dict(config.player2)]}
    if isinstance(config, BaselineSpec):
        return {"kind": "baseline", "horizon": config.horizon, "budget": config.budget}
    if isinstance(config, SimConfig):
        return {"kind": "simulate", "horizon": config.horizon,
                "players": [_player_dict(config.player1), _player_dict(config.player2)],
                "policy": config.policy.value, "seed": config.seed,
                "stop_when_exhausted": config.stop_when_exhausted}
    if isinstance(config, GridSpec):
        return {"kind": "sweep", "c_values": list(config.c_values),
                "alpha_values": list(config.alpha_values), "horizon": config.horizon,
                "tokens": [config.tokens1, config.tokens2], "policy": config.policy.value,
                "runs_per_cell": config.runs_per_cell, "base_seed": config.base_seed,
                "horizon_mode": config.horizon_mode}
    raise TypeError(f"not a config: {type(config).__name__}")


def config_digest(config) -> str:
    text = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# -- output ------------------------------------------------------------------


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if np.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_round(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_table(out: Path, stem: str, header, rows, fmt_: str) -> Path:
    if fmt_ == "json":
        path = out / f"{stem}.json"
        _write_json(path, [dict(zip(header, r)) for r in rows])
    else:
        path = out / f"{stem}.csv"
        _write_csv(path, header, rows)
    return path


def solve_report(game: StageGame) -> dict:
    eqs = equilibrium_set(game)
    bimatrix = payoff_bimatrix(game)
    players = []
    for p in game.players:
        if p.can_transmit:
            cv = critical_values(game.aoi, p)
            players.append({
                "threshold": threshold(p),
                "critical_cost": cv.c_star,
                "critical_alpha": cv.alpha_star,
                "critical_tokens": cv.g_star,
                "printed_closed_form_probability": printed_mixed_probability(game.aoi, p),
            })
        else:
            players.append({"threshold": None, "critical_cost": None,
                            "critical_alpha": None, "critical_tokens": None,
                            "printed_closed_form_probability": None})
    return {
        "aoi": game.aoi,
        "players": players,
        "pure_nash": [list(p) for p in eqs.pure],
        "mixed_nash": None if eqs.mixed is None else {"p1": eqs.mixed.p1, "p2": eqs.mixed.p2},
        "payoffs": {
            f"{s1}{s2}": bimatrix.cell(s1, s2) for s1 in (1, 0) for s2 in (1, 0)
        },
    }


def trace_rows(trace):
    for e in trace.events:
        yield (e.slot, e.aoi_before, e.action1, e.action2,
               e.tokens1_after, e.tokens2_after, e.kind.value)


def trace_summary(trace) -> dict:
    n1, n2 = trace.transmissions
    last = trace.events[-1] if trace.events else None
    return {
        "horizon": trace.horizon,
        "average_aoi": average_aoi(trace),
        "transmissions": [n1, n2],
        "collisions": trace.collisions,
        "update_slots": trace.update_slots,
        "tokens_left": list(last.tokens_after) if last else
        [trace.config.player1.tokens, trace.config.player2.tokens],
    }


def run_command(name: str, config, output_dir, fmt_: str = "csv") -> RunManifest:
    """Run one command and write its files (plus ``manifest.json``) to ``output_dir``."""
    if name not in COMMANDS:
        raise ConfigError(f"unknown command {name!r}")
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if name == "baseline" and isinstance(config, SimConfig):
        config = BaselineSpec(config.horizon, config.player1.tokens + config.player2.tokens)
    expected = {"solve": StageGame, "simulate": SimConfig,
                "baseline": BaselineSpec, "sweep": GridSpec}[name]
    if not isinstance(config, expected):
        raise ConfigError(f"{name} needs a {expected.__name__} config, got {type(config).__name__}")

    outputs: list[Path] = []
    seed = 0
    if name == "solve":
        path = out / "solve.json"
        _write_json(path, solve_report(config))
        outputs.append(path)
    elif name == "simulate":
        seed = config.seed
        trace = simulate(config)
        outputs.append(_write_table(out, "trace", TRACE_COLUMNS, trace_rows(trace), fmt_))
        path = out / "summary.json"
        _write_json(path, trace_summary(trace))
        outputs.append(path)
    elif name == "baseline":
        schedule = optimal_schedule(config.horizon, config.budget)
        path = out / "baseline.json"
        _write_json(path, {"horizon": config.horizon, "budget": config.budget,
                           "update_slots": list(schedule.update_slots),
                           "average_aoi": schedule_average_aoi(schedule)})
        outputs.append(path)
    else:
        seed = config.base_seed
        grid = sweep_podu(config)
        rows = [
            (fmt(c), fmt(a), fmt(grid.podu[i, j]), config.runs_per_cell)
            for i, a in enumerate(grid.alpha_values)
            for j, c in enumerate(grid.c_values)
        ]
        if fmt_ == "json":
            rows = [(float(c), float(a), float(p), r) for c, a, p, r in rows]
        outputs.append(_write_table(out, "podu_grid", GRID_COLUMNS, rows, fmt_))
        c_max, a_max = grid.argmax()
        path = out / "summary.json"
        _write_json(path, {"min": float(grid.podu.min()), "max": float(grid.podu.max()),
                           "argmax": {"c": c_max, "alpha": a_max},
                           "fraction_below_1_1": grid.fraction_below(1.1),
                           "cells": int(grid.podu.size)})
        outputs.append(path)

    manifest = RunManifest(name, config_digest(config), seed, __version__,
                           [str(p) for p in outputs])
    manifest_path = out / "manifest.json"
    # names only, so the file does not depend on where the run was written
    record = {**asdict(manifest), "outputs": [p.name for p in outputs]}
    _write_json(manifest_path, {**record, "config": config_to_dict(config)})
    manifest.outputs.append(str(manifest_path))
    return manifest


# -- command line --------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aoigame", description="Two-sensor AoI game solver and simulator.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="YAML or JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--policy", help="override the equilibrium selection policy")
    parser.add_argument("--runs-per-cell", type=int, help="override runs per sweep cell")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _apply_overrides(config, args):
    try:
        if args.policy is not None and isinstance(config, (SimConfig, GridSpec)):
            config = replace(config, policy=SelectionPolicy.parse(args.policy))
        if args.seed is not None:
            if isinstance(config, SimConfig):
                config = replace(config, seed=args.seed)
            elif isinstance(config, GridSpec):
                config = replace(config, base_seed=args.seed)
        if args.runs_per_cell is not None and isinstance(config, GridSpec):
            config = replace(config, runs_per_cell=args.runs_per_cell)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return config


def _fail(kind: str, message: str, key: str | None = None) -> None:
    line = {"error": kind, "message": message}
    if key:
        line["key"] = key
    print(json.dumps(line), file=sys.stderr)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = Path(args.config).read_text(encoding="utf-8")
        kind = None if args.command == "baseline" else args.command
        config = _apply_overrides(parse_config(text, kind), args)
    except UsageError as exc:
        _fail("usage", str(exc))
        return 1
    except ConfigError as exc:
        _fail("config", exc.message, exc.key)
        return 1
    except (OSError, ValueError) as exc:
        _fail("config", str(exc))
        return 1
    try:
        manifest = run_command(args.command, config, args.out, args.format)
    except Exception as exc:  # noqa: BLE001 - reported as a single line
        _fail("runtime", f"{type(exc).__name__}: {exc}")
        return 2
    print(json.dumps(asdict(manifest)))
    return 0
