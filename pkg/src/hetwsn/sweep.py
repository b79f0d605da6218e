"""Multi-seed sweeps and paired protocol comparisons."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import ConfigError
from .election import Strategy
from .metrics import SimSummary
from .simulator import SimConfig, run

METRICS = {
    "first_death": "first_death_round",
    "half_death": "half_death_round",
    "last_death": "last_death_round",
    "packets_to_bs": "total_packets_to_bs",
    "packets_to_ch": "total_packets_to_ch",
}


@dataclass(frozen=True)
class MetricStats:
    median: float
    q25: float
    q75: float

    @property
    def iqr(self) -> float:
        return self.q75 - self.q25


@dataclass(frozen=True)
class SweepResult:
    strategy: Strategy
    seeds: tuple[int, ...]  # ascending
    summaries: tuple[SimSummary, ...]  # aligned with seeds
    stats: dict[str, MetricStats]

    def values(self, metric: str) -> np.ndarray:
        attr = METRICS[metric]
        return np.array([getattr(s, attr) for s in self.summaries])


def _summary_for(config: SimConfig) -> SimSummary:
    return run(config)[1]


def aggregate(strategy: Strategy, seeds, summaries) -> SweepResult:
    stats = {}
    for metric, attr in METRICS.items():
        v = np.array([getattr(s, attr) for s in summaries], dtype=float)
        q25, q75 = np.percentile(v, [25, 75])
        stats[metric] = MetricStats(float(np.median(v)), float(q25), float(q75))
    return SweepResult(Strategy(strategy), tuple(seeds), tuple(summaries), stats)


def sweep(config: SimConfig, seeds, workers: int = 1) -> SweepResult:
    """Run ``config`` once per seed and aggregate medians and quartiles.

    Seeds are deduplicated and processed in ascending order, so the result
    does not depend on the order they were given in.
    """
    seeds = sorted(set(int(s) for s in seeds))
    if not seeds:
        raise ValueError("sweep needs at least one seed")
    configs = [dataclasses.replace(config, seed=s) for s in seeds]
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summaries = list(pool.map(_summary_for, configs))
    else:
        summaries = [_summary_for(c) for c in configs]
    return aggregate(config.strategy, seeds, summaries)


@dataclass(frozen=True)
class Comparison:
    results: tuple[SweepResult, ...]
    # metric -> strategies ordered by median, highest first
    ranking: dict[str, tuple[Strategy, ...]]

    def result(self, strategy: Strategy | str) -> SweepResult:
        strategy = Strategy(strategy)
        return next(r for r in self.results if r.strategy is strategy)

    def median(self, strategy: Strategy | str, metric: str) -> float:
        return self.result(strategy).stats[metric].median


_SHARED = ("n_nodes", "field_side", "bs_x", "bs_y", "radio", "het", "max_rounds")


def check_paired(configs) -> None:
    """Raise ConfigError unless the configs differ only in strategy."""
    ref = configs[0][1]
    for strategy, cfg in configs[1:]:
        for name in _SHARED:
            if getattr(cfg, name) != getattr(ref, name):
                raise ConfigError(
                    f"compare: {strategy.value} config differs from {configs[0][0].value} in {name}"
                )
    names = [s for s, _ in configs]
    if len(set(names)) != len(names):
        raise ConfigError("compare: each strategy may appear only once")


def compare(configs, seeds, workers: int = 1) -> Comparison:
    """Sweep each ``(strategy, config)`` over the same seeds and rank per metric."""
    configs = [(Strategy(s), c) for s, c in configs]
    if not configs:
        raise ValueError("compare needs at least one configuration")
    check_paired(configs)
    results = tuple(
        sweep(dataclasses.replace(cfg, strategy=strategy), seeds, workers=workers)
        for strategy, cfg in configs
    )
    ranking = {
        metric: tuple(
            r.strategy for r in sorted(results, key=lambda r: -r.stats[metric].median)
        )
        for metric in METRICS
    }
    return Comparison(results, ranking)
