"""Heterogeneity algebra and cluster-head election probabilities.

Nodes come in four energy classes with initial energies ``e0 * (1 + alpha)``,
``alpha`` in ``(0, a, b, u)``.  The residual-energy-weighted election rule
is written once for four classes; the two- and three-class baselines are
obtained by zeroing the upper fractions and folding the upper classes down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum, IntEnum


class NodeClass(IntEnum):
    NORMAL = 0
    ADVANCED = 1
    SUPER = 2
    ULTRA_SUPER = 3


class Strategy(str, Enum):
    LEACH = "LEACH"
    DEEC = "DEEC"
    EDEEC = "EDEEC"
    BEENISH = "BEENISH"

    @classmethod
    def parse(cls, name: str) -> "Strategy":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {name!r}; expected one of {valid}") from None


@dataclass(frozen=True)
class HeterogeneityParams:
    """Class fractions, energy multipliers, base energy and reference CH probability.

    ``m`` is the fraction of non-normal nodes, ``m0`` the share of those that
    are super or ultra-super, ``m1`` the share of those that are ultra-super.
    """

    m: float = 0.5
    m0: float = 0.3
    m1: float = 0.2
    a: float = 1.5
    b: float = 2.0
    u: float = 2.5
    e0: float = 0.5
    p_opt: float = 0.1

    def __post_init__(self):
        for name in ("m", "m0", "m1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a fraction in [0, 1], got {value!r}")
        for name in ("a", "b", "u"):
            value = getattr(self, name)
            if not (value >= 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite multiplier >= 0, got {value!r}")
        if not (self.e0 > 0 and math.isfinite(self.e0)):
            raise ValueError(f"e0 must be positive, got {self.e0!r}")
        if not 0.0 < self.p_opt <= 1.0:
            raise ValueError(f"p_opt must lie in (0, 1], got {self.p_opt!r}")
        if not heterogeneity_factor(self) > 0:
            raise ValueError("heterogeneity denominator must be positive")


def heterogeneity_factor(params: HeterogeneityParams) -> float:
    """``1 + m(a + m0(-a + b + m1(-b + u)))``: total energy in units of ``N * e0``."""
    m, m0, m1, a, b, u = params.m, params.m0, params.m1, params.a, params.b, params.u
    return 1 + m * (a + m0 * (-a + b + m1 * (-b + u)))


def effective_params(strategy: Strategy, params: HeterogeneityParams) -> HeterogeneityParams:
    """Parameters as seen by ``strategy``'s election rule."""
    if strategy is Strategy.EDEEC:
        return replace(params, m1=0.0)
    if strategy is Strategy.DEEC:
        return replace(params, m0=0.0, m1=0.0)
    return params


def effective_class(strategy: Strategy, node_class: NodeClass) -> NodeClass:
    """Fold classes the strategy cannot distinguish into the highest one it can."""
    if strategy is Strategy.EDEEC and node_class is NodeClass.ULTRA_SUPER:
        return NodeClass.SUPER
    if strategy is Strategy.DEEC and node_class > NodeClass.ADVANCED:
        return NodeClass.ADVANCED
    return node_class


def class_multipliers(params: HeterogeneityParams) -> tuple[float, float, float, float]:
    """``(1, 1+a, 1+b, 1+u)`` indexed by ``NodeClass``."""
    return (1.0, 1.0 + params.a, 1.0 + params.b, 1.0 + params.u)


def strategy_weights(strategy: Strategy, params: HeterogeneityParams) -> tuple[tuple[float, ...], float]:
    """Per-class election weights and the normalising denominator for a strategy.

    Returns ``(weights, denom)`` such that a node of class ``c`` with residual
    ``E`` elects with probability ``p_opt * weights[c] * (E / avg) / denom``.
    """
    eff = effective_params(strategy, params)
    mult = class_multipliers(eff)
    weights = tuple(mult[effective_class(strategy, c)] for c in NodeClass)
    return weights, heterogeneity_factor(eff)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def class_counts(n_nodes: int, params: HeterogeneityParams) -> tuple[int, int, int, int]:
    """Split ``n_nodes`` into (normal, advanced, super, ultra-super) by nested rounding."""
    if n_nodes < 1:
        raise ValueError(f"n_nodes must be >= 1, got {n_nodes!r}")
    non_normal = _round_half_up(n_nodes * params.m)
    upper = _round_half_up(n_nodes * params.m * params.m0)
    ultra = _round_half_up(n_nodes * params.m * params.m0 * params.m1)
    counts = (n_nodes - non_normal, non_normal - upper, upper - ultra, ultra)
    if min(counts) < 0:
        raise ValueError(f"class fractions give negative class size: {counts}")
    return counts


def initial_energy(node_class: NodeClass, params: HeterogeneityParams) -> float:
    return params.e0 * class_multipliers(params)[node_class]


def total_energy(n_nodes: int, params: HeterogeneityParams) -> float:
    return n_nodes * params.e0 * heterogeneity_factor(params)


def average_energy_estimate(round: int, total_rounds_r: int, e_total: float, n_nodes: int) -> float:
    """Linearly depleting per-node average energy, clamped at 0 past the horizon."""
    if total_rounds_r <= 0:
        raise ValueError(f"total_rounds_r must be >= 1, got {total_rounds_r!r}")
    if round < 0:
        raise ValueError(f"round must be >= 0, got {round!r}")
    return max(0.0, e_total / n_nodes * (1 - round / total_rounds_r))


def lifetime_estimate(e_total: float, e_round: float) -> int:
    """Rounds until the network's energy is spent at ``e_round`` per round."""
    if not e_round > 0:
        raise ValueError(f"e_round must be positive, got {e_round!r}")
    return max(1, math.floor(e_total / e_round))


def election_probability(
    strategy: Strategy,
    node_class: NodeClass,
    residual: float,
    avg_energy: float,
    params: HeterogeneityParams,
) -> float:
    """Probability that a node of ``node_class`` becomes cluster head this epoch.

    LEACH ignores energy and returns ``p_opt``.  The others scale ``p_opt`` by
    the class weight and by residual relative to ``avg_energy``.  Clamped to 1.
    """
    if not avg_energy > 0:
        raise ValueError(f"avg_energy must be positive, got {avg_energy!r}")
    if residual < 0:
        raise ValueError(f"residual must be non-negative, got {residual!r}")
    if strategy is Strategy.LEACH:
        return params.p_opt
    weights, denom = strategy_weights(strategy, params)
    # ratio first so residual == avg_energy contributes exactly 1.0
    p = params.p_opt * weights[node_class] * (residual / avg_energy) / denom
    return min(p, 1.0)


def epoch_length(p_i: float) -> int:
    """Rounds between successive cluster-head terms, ``round(1/p_i)``, at least 1."""
    if not p_i > 0:
        raise ValueError(f"p_i must be positive, got {p_i!r}")
    return max(1, _round_half_up(1.0 / p_i))


def ch_threshold(p_i: float, round: int, eligible: bool) -> float:
    """Rotating-epoch election threshold; 0 for ineligible nodes."""
    if not eligible or p_i <= 0:
        return 0.0
    denom = 1.0 - p_i * (round % epoch_length(p_i))
    if denom <= 0:
        return 1.0
    return min(1.0, max(0.0, p_i / denom))
