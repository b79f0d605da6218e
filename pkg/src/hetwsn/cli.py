"""Command-line entry point: ``python -m hetwsn {run,sweep,compare,validate}``.

Exit codes: 0 success, 1 configuration error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import report
from .config import ConfigError, config_text, load_config
from .election import Strategy, class_counts
from .energy import avg_dist_to_bs, optimal_cluster_count_continuous, threshold_distance
from .simulator import SimConfig, lifetime_model, run
from .sweep import compare, sweep

DEFAULT_SEED_COUNT = 30


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", action="append", default=[], metavar="PATH",
                        help="key=value config file (compare accepts one per strategy)")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", dest="overrides",
                        help="override a config key; repeatable")
    common.add_argument("--out", type=Path, metavar="DIR", help="output directory")
    common.add_argument("--seed", type=int, help="single seed (default: sim.seed)")
    common.add_argument("--seeds", type=int, metavar="N", help="run N consecutive seeds")
    common.add_argument("--seed-base", type=int, metavar="SEED", help="first of the --seeds seeds")
    common.add_argument("--workers", type=int, default=1, help="parallel processes for sweeps")

    parser = _Parser(prog="hetwsn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="simulate one seed")
    sub.add_parser("sweep", parents=[common], help="simulate many seeds and aggregate")
    p = sub.add_parser("compare", parents=[common], help="paired multi-strategy sweep")
    p.add_argument("--strategies", default="DEEC,EDEEC,BEENISH",
                   help="comma-separated strategies when a single config is given")
    sub.add_parser("validate", parents=[common], help="print derived quantities, no simulation")
    return parser


def _seeds(args, config: SimConfig) -> list[int]:
    if args.seeds is not None:
        if args.seeds < 1:
            raise ConfigError("--seeds must be >= 1")
        base = config.seed if args.seed_base is None else args.seed_base
        return list(range(base, base + args.seeds))
    if args.seed is not None:
        return [args.seed]
    return list(range(config.seed, config.seed + DEFAULT_SEED_COUNT))


def _load(args, path) -> SimConfig:
    config = load_config(path, args.overrides)
    if args.seed is not None:
        config = _replace(config, seed=args.seed)
    return config


def _replace(config, **changes):
    try:
        return dataclasses.replace(config, **changes)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _single_config(args) -> SimConfig:
    if len(args.config) > 1:
        raise ConfigError(f"{args.command} takes at most one --config")
    return _load(args, args.config[0] if args.config else None)


def _need_out(args) -> Path:
    if args.out is None:
        raise ConfigError(f"{args.command} requires --out DIR")
    return args.out


def _meta(config, args, **extra):
    return report.metadata_text(
        config, command=args.command, overrides=";".join(args.overrides), **extra
    )


def cmd_validate(args) -> None:
    config = _single_config(args)
    model = lifetime_model(config)
    side = config.field_side
    d_bs = avg_dist_to_bs(side)
    counts = class_counts(config.n_nodes, config.het)
    k_cont = optimal_cluster_count_continuous(config.radio, config.n_nodes, side, d_bs)
    print(config_text(config), end="")
    print(f"class_counts={','.join(map(str, counts))}  # normal,advanced,super,ultra_super")
    print(f"e_total_j={model.e_total:.9g}")
    print(f"d0_m={threshold_distance(config.radio):.9g}")
    print(f"d_to_bs_m={d_bs:.9g}")
    print(f"k_opt={model.k_opt}  # continuous {k_cont:.6g}")
    print(f"e_round_j={model.e_round:.9g}")
    print(f"lifetime_estimate_rounds={model.rounds_estimate}")


def cmd_run(args) -> None:
    out = _need_out(args)
    config = _single_config(args)
    if args.seeds is not None:
        raise ConfigError("run takes --seed, not --seeds")
    series, summary = run(config)
    report.write_text(out / "timeseries.csv", report.timeseries_csv(series))
    report.write_text(out / "summary.csv", report.summary_csv([(config.strategy, config.seed, summary)]))
    report.write_text(out / "metadata.txt", _meta(config, args))
    print(f"{config.strategy.value} seed={config.seed}: first={summary.first_death_round} "
          f"half={summary.half_death_round} last={summary.last_death_round} "
          f"packets_to_bs={summary.total_packets_to_bs}"
          + (" (truncated)" if summary.truncated else ""))


def cmd_sweep(args) -> None:
    out = _need_out(args)
    config = _single_config(args)
    seeds = _seeds(args, config)
    result = sweep(config, seeds, workers=args.workers)
    report.write_text(out / "summary.csv", report.summary_csv(report.sweep_summary_rows(result)))
    report.write_text(out / "aggregate.csv", report.aggregate_csv([result]))
    report.write_text(out / "metadata.txt", _meta(config, args, seeds=",".join(map(str, result.seeds))))
    for metric, st in result.stats.items():
        print(f"{metric}: median={st.median:g} iqr={st.iqr:g}")


def cmd_compare(args) -> None:
    out = _need_out(args)
    if len(args.config) > 1:
        configs = [_load(args, path) for path in args.config]
        pairs = [(c.strategy, c) for c in configs]
    else:
        base = _single_config(args)
        try:
            strategies = [Strategy.parse(s) for s in args.strategies.split(",") if s.strip()]
        except ValueError as e:
            raise ConfigError(f"--strategies: {e}") from None
        pairs = [(s, base) for s in strategies]
    seeds = _seeds(args, pairs[0][1])
    comparison = compare(pairs, seeds, workers=args.workers)
    rows = [row for r in comparison.results for row in report.sweep_summary_rows(r)]
    report.write_text(out / "summary.csv", report.summary_csv(rows))
    report.write_text(out / "aggregate.csv", report.aggregate_csv(comparison.results))
    report.write_text(out / "comparison.csv", report.comparison_csv(comparison))
    report.write_text(out / "metadata.txt", _meta(
        pairs[0][1], args,
        strategies=",".join(s.value for s, _ in pairs),
        seeds=",".join(map(str, comparison.results[0].seeds)),
    ))
    for metric, order in comparison.ranking.items():
        cells = ", ".join(f"{s.value}={comparison.median(s, metric):g}" for s in order)
        print(f"{metric}: {cells}")


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "compare": cmd_compare, "validate": cmd_validate}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"hetwsn: configuration error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001
        print(f"hetwsn: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return 0
