"""CSV and metadata writers.

Floats are written with ``%.9g`` so identical runs give identical bytes.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from . import __version__
from .config import config_items
from .metrics import SimSummary
from .simulator import RNG_ALGORITHM, SimConfig
from .sweep import METRICS, Comparison, SweepResult

TIMESERIES_HEADER = (
    "round", "alive", "ch_count", "packets_to_ch", "packets_to_bs",
    "energy_consumed_j", "total_residual_j",
)
SUMMARY_HEADER = (
    "strategy", "seed", "first_death", "half_death", "last_death",
    "packets_to_bs", "packets_to_ch", "rounds", "truncated",
)
AGGREGATE_HEADER = ("strategy", "metric", "n_seeds", "median", "q25", "q75", "iqr")
COMPARISON_HEADER = ("metric", "rank", "strategy", "median", "q25", "q75", "iqr")


def fmt(x: float) -> str:
    return f"{x:.9g}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def timeseries_csv(series) -> str:
    return _csv(TIMESERIES_HEADER, (
        (o.round, o.alive_count, o.ch_count, o.packets_to_ch, o.packets_to_bs,
         fmt(o.energy_consumed), fmt(o.total_residual))
        for o in series
    ))


def summary_row(strategy, seed: int, s: SimSummary) -> tuple:
    return (
        getattr(strategy, "value", strategy), seed, s.first_death_round, s.half_death_round,
        s.last_death_round, s.total_packets_to_bs, s.total_packets_to_ch, s.rounds_simulated,
        str(s.truncated).lower(),
    )


def summary_csv(rows) -> str:
    """``rows`` are ``(strategy, seed, SimSummary)`` triples."""
    return _csv(SUMMARY_HEADER, (summary_row(*r) for r in rows))


def sweep_summary_rows(result: SweepResult):
    return [(result.strategy, seed, s) for seed, s in zip(result.seeds, result.summaries)]


def aggregate_csv(results) -> str:
    rows = []
    for r in results:
        for metric in METRICS:
            st = r.stats[metric]
            rows.append((r.strategy.value, metric, len(r.seeds), fmt(st.median), fmt(st.q25), fmt(st.q75), fmt(st.iqr)))
    return _csv(AGGREGATE_HEADER, rows)


def comparison_csv(comparison: Comparison) -> str:
    rows = []
    for metric, order in comparison.ranking.items():
        for rank, strategy in enumerate(order, 1):
            st = comparison.result(strategy).stats[metric]
            rows.append((metric, rank, strategy.value, fmt(st.median), fmt(st.q25), fmt(st.q75), fmt(st.iqr)))
    return _csv(COMPARISON_HEADER, rows)


def metadata_text(config: SimConfig, **extra) -> str:
    """``key=value`` sidecar: artifact version, RNG identity, config echo, extras."""
    lines = [("artifact_version", __version__), ("rng_algorithm", RNG_ALGORITHM)]
    lines += [(k, v) for k, v in extra.items()]
    lines += config_items(config)
    return "".join(f"{k}={v}\n" for k, v in lines)


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path
