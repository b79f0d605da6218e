"""Cluster-head election simulator for heterogeneous wireless sensor networks.

Residual-energy-weighted election (BEENISH) over four node energy classes,
with DEEC, EDEEC and LEACH baselines, a first-order radio model, and seed
sweeps for lifetime statistics.
"""

__version__ = "0.1.0"

from .election import (  # noqa: E402
    HeterogeneityParams,
    NodeClass,
    Strategy,
    ch_threshold,
    class_counts,
    election_probability,
    epoch_length,
    initial_energy,
    total_energy,
)
from .energy import RadioParams, threshold_distance, tx_energy  # noqa: E402
from .metrics import SimSummary, summarize  # noqa: E402
from .simulator import SimConfig, run  # noqa: E402
from .sweep import compare, sweep  # noqa: E402

__all__ = [
    "HeterogeneityParams", "NodeClass", "RadioParams", "SimConfig", "SimSummary", "Strategy",
    "ch_threshold", "class_counts", "compare", "election_probability", "epoch_length",
    "initial_energy", "run", "summarize", "sweep", "threshold_distance", "total_energy",
    "tx_energy",
]
