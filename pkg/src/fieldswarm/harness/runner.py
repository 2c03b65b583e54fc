"""Replication runner: run scenarios to duration, sample metrics at 1 Hz,
emit per-replication and mean CSV files."""

from __future__ import annotations

import os

from ..engine import EventRecorder, run_until
from .config import ScenarioConfig
from .scenarios import BuiltScenario, build

SAMPLE_PERIOD = 1.0  # simulated seconds


def _format(value: float) -> str:
    return f"{value:.6f}"


def sample_replication(cfg: ScenarioConfig, seed: int, record_events: bool = False):
    """Run one seed to duration; returns (rows, built) with one metric row
    per sampling tick."""
    recorder = EventRecorder() if record_events else None
    built = build(cfg, seed, recorder=recorder)
    rows = []
    ticks = int(round(cfg.duration / SAMPLE_PERIOD))
    for tick in range(1, ticks + 1):
        t = tick * SAMPLE_PERIOD
        run_until(built.world, built.program, t)
        row = built.sampler(built.world)
        rows.append((t, [row[name] for name in built.metric_names]))
    return rows, built


def rows_to_csv(metric_names, rows) -> str:
    lines = ["time," + ",".join(metric_names)]
    for t, values in rows:
        lines.append(_format(t) + "," + ",".join(_format(v) for v in values))
    return "\n".join(lines) + "\n"


def mean_rows(per_seed_rows) -> list:
    """Arithmetic mean across replications, tick by tick."""
    n = len(per_seed_rows)
    length = len(per_seed_rows[0])
    out = []
    for i in range(length):
        t = per_seed_rows[0][i][0]
        width = len(per_seed_rows[0][i][1])
        means = [
            sum(rows[i][1][j] for rows in per_seed_rows) / n for j in range(width)
        ]
        out.append((t, means))
    return out


def run_scenario(
    cfg: ScenarioConfig, out_dir: str, record_events: bool = False
) -> dict:
    """Run every seed, write metrics_<scenario>_<seed>.csv files and the
    cross-seed mean_<scenario>.csv; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = {}
    per_seed_rows = []
    metric_names = None
    for seed in cfg.seeds:
        rows, built = sample_replication(cfg, seed, record_events=record_events)
        metric_names = built.metric_names
        per_seed_rows.append(rows)
        path = os.path.join(out_dir, f"metrics_{cfg.name}_{seed}.csv")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(rows_to_csv(metric_names, rows))
        written[f"metrics_{seed}"] = path
        if record_events and built.world.recorder is not None:
            dump_path = os.path.join(out_dir, f"events_{cfg.name}_{seed}.txt")
            with open(dump_path, "w", encoding="utf-8") as handle:
                handle.write(built.world.recorder.structure().dump())
            written[f"events_{seed}"] = dump_path
    mean_path = os.path.join(out_dir, f"mean_{cfg.name}.csv")
    with open(mean_path, "w", encoding="utf-8") as handle:
        handle.write(rows_to_csv(metric_names, mean_rows(per_seed_rows)))
    written["mean"] = mean_path
    return written
