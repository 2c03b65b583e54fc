"""Batch CLI: run a scenario (or the full fault sweep) and emit CSV files.

Exit codes: 0 success, 2 configuration error, 3 runtime invariant breach.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import ConfigError, load_scenario_file
from .runner import run_scenario
from .scenarios import DEFAULT_SCENARIOS, default_scenario

# Free-variable grid of the resilience evaluation.
SWEEP_LOSS = (0.0, 0.1, 0.2, 0.4, 0.7)
SWEEP_NOISE = (0.0, 1.0, 5.0, 10.0)
SWEEP_KILL = (0.0, 0.1, 0.2, 0.3)
SWEEP_KILL_TIME = 2000.0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fieldswarm", description="Field-based swarm batch simulator"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario (or its full fault sweep)")
    run.add_argument(
        "--scenario",
        required=True,
        help=f"builtin name ({', '.join(sorted(DEFAULT_SCENARIOS))}) or a config file path",
    )
    run.add_argument("--seed", type=int, default=None, help="single seed to run")
    run.add_argument(
        "--replications", type=int, default=None, help="run seeds 1..N"
    )
    run.add_argument("--loss", type=float, default=None, help="message loss D")
    run.add_argument("--noise", type=float, default=None, help="position noise P (m)")
    run.add_argument("--kill", type=float, default=None, help="kill fraction K")
    run.add_argument("--kill-time", type=float, default=None, help="kill time T_k (s)")
    run.add_argument("--duration", type=float, default=None, help="seconds simulated")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument(
        "--full-sweep",
        action="store_true",
        help="run the whole D/P/K free-variable grid (long)",
    )
    run.add_argument(
        "--dump-events",
        action="store_true",
        help="also write event-structure dumps",
    )
    return parser


def _load_config(name_or_path: str):
    if os.path.exists(name_or_path):
        return load_scenario_file(name_or_path)
    return default_scenario(name_or_path)


def _apply_overrides(cfg, args):
    overrides = {}
    if args.seed is not None:
        overrides["seeds"] = (args.seed,)
        overrides["replications"] = 1
    elif args.replications is not None:
        overrides["seeds"] = tuple(range(1, args.replications + 1))
        overrides["replications"] = args.replications
    if args.loss is not None:
        overrides["message_loss"] = args.loss
    if args.noise is not None:
        overrides["position_noise"] = args.noise
    if args.kill is not None:
        overrides["kill_fraction"] = args.kill
    if args.kill_time is not None:
        overrides["kill_time"] = args.kill_time
    if args.duration is not None:
        overrides["duration"] = args.duration
    return cfg.with_overrides(**overrides)


def _run_sweep(cfg, out_dir: str, dump_events: bool) -> None:
    for loss in SWEEP_LOSS:
        for noise in SWEEP_NOISE:
            for kill in SWEEP_KILL:
                point = cfg.with_overrides(
                    name=f"{cfg.name}_D{loss}_P{noise}_K{kill}",
                    message_loss=loss,
                    position_noise=noise,
                    kill_fraction=kill,
                    kill_time=SWEEP_KILL_TIME if kill > 0 else None,
                )
                written = run_scenario(point, out_dir, record_events=dump_events)
                print(f"{point.name}: {written['mean']}")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _load_config(args.scenario)
        cfg = _apply_overrides(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.full_sweep:
            _run_sweep(cfg, args.out, args.dump_events)
        else:
            written = run_scenario(cfg, args.out, record_events=args.dump_events)
            for label, path in sorted(written.items()):
                print(f"{label}: {path}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
