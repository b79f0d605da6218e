"""Lifetime statistics derived from a per-round outcome series."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SimSummary:
    first_death_round: int  # stability period
    half_death_round: int
    last_death_round: int  # network lifetime
    total_packets_to_bs: int
    total_packets_to_ch: int
    rounds_simulated: int
    truncated: bool


def summarize(series: Sequence, n_nodes: int) -> SimSummary:
    """Reduce a round series to death rounds and packet totals.

    ``series`` items need ``round``, ``alive_count``, ``packets_to_bs`` and
    ``packets_to_ch``; alive counts are taken after the round's deaths.  An
    event that never happens is reported as ``rounds_simulated`` and marks
    the summary truncated.
    """
    if not series:
        raise ValueError("cannot summarize an empty series")
    rounds = len(series)
    half = n_nodes // 2
    first = next((o.round for o in series if o.alive_count < n_nodes), None)
    mid = next((o.round for o in series if o.alive_count <= half), None)
    last = next((o.round for o in series if o.alive_count == 0), None)
    truncated = last is None or mid is None or first is None
    return SimSummary(
        first_death_round=rounds if first is None else first,
        half_death_round=rounds if mid is None else mid,
        last_death_round=rounds if last is None else last,
        total_packets_to_bs=sum(o.packets_to_bs for o in series),
        total_packets_to_ch=sum(o.packets_to_ch for o in series),
        rounds_simulated=rounds,
        truncated=truncated,
    )
