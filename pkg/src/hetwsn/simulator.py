"""Round-based network simulation.

Each round: estimate the network average energy, elect cluster heads,
attach every other live node to its nearest head, charge the radio costs,
and retire nodes whose battery hit zero.  Node state is held column-wise in
:class:`Network`; :class:`NodeState` is a per-node snapshot view.

All randomness comes from one ``numpy.random.Generator`` seeded from
``SimConfig.seed``: first the deployment positions, then exactly one uniform
variate per live node per round, in ascending id order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .election import (
    HeterogeneityParams,
    NodeClass,
    Strategy,
    average_energy_estimate,
    class_counts,
    class_multipliers,
    lifetime_estimate,
    strategy_weights,
    total_energy,
)
from .energy import (
    RadioParams,
    aggregation_energy,
    avg_dist_to_bs,
    optimal_cluster_count,
    round_energy,
    rx_energy,
    tx_energy_array,
)
from .metrics import SimSummary, summarize

BS = -1  # member_of target for nodes reporting straight to the base station

RNG_ALGORITHM = f"numpy.random.PCG64 (numpy {np.__version__})"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SimConfig:
    n_nodes: int = 100
    field_side: float = 100.0
    bs_x: float | None = None  # None -> field centre
    bs_y: float | None = None
    radio: RadioParams = field(default_factory=RadioParams)
    het: HeterogeneityParams = field(default_factory=HeterogeneityParams)
    strategy: Strategy = Strategy.BEENISH
    seed: int = 0
    max_rounds: int = 20000

    def __post_init__(self):
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 1:
            raise ValueError(f"n_nodes must be an integer >= 1, got {self.n_nodes!r}")
        if not (self.field_side > 0 and math.isfinite(self.field_side)):
            raise ValueError(f"field_side must be positive, got {self.field_side!r}")
        if int(self.max_rounds) != self.max_rounds or self.max_rounds < 1:
            raise ValueError(f"max_rounds must be an integer >= 1, got {self.max_rounds!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.bs_x is None:
            object.__setattr__(self, "bs_x", self.field_side / 2)
        if self.bs_y is None:
            object.__setattr__(self, "bs_y", self.field_side / 2)
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        class_counts(self.n_nodes, self.het)  # rejects fractions that cannot partition N


@dataclass(frozen=True)
class NodeState:
    id: int
    x: float
    y: float
    node_class: NodeClass
    initial_energy: float
    residual_energy: float
    alive: bool
    ch_blocked_until: int


@dataclass
class Network:
    """Column-wise state of every deployed node, indexed by node id."""

    x: np.ndarray
    y: np.ndarray
    node_class: np.ndarray
    initial_energy: np.ndarray
    residual: np.ndarray
    alive: np.ndarray
    ch_blocked_until: np.ndarray

    def __len__(self) -> int:
        return len(self.x)

    def node(self, i: int) -> NodeState:
        return NodeState(
            id=int(i),
            x=float(self.x[i]),
            y=float(self.y[i]),
            node_class=NodeClass(int(self.node_class[i])),
            initial_energy=float(self.initial_energy[i]),
            residual_energy=float(self.residual[i]),
            alive=bool(self.alive[i]),
            ch_blocked_until=int(self.ch_blocked_until[i]),
        )

    def nodes(self) -> list[NodeState]:
        return [self.node(i) for i in range(len(self))]

    def copy(self) -> "Network":
        return Network(**{k: v.copy() for k, v in self.__dict__.items()})


@dataclass(frozen=True)
class ClusterAssignment:
    """Who reports to whom in one round.

    ``member_ids[j]`` sends its packet to ``head_of[j]``, which is either an
    id from ``ch_ids`` or :data:`BS`.
    """

    ch_ids: np.ndarray
    member_ids: np.ndarray
    head_of: np.ndarray

    @property
    def member_of(self) -> dict[int, int]:
        return dict(zip(self.member_ids.tolist(), self.head_of.tolist()))


@dataclass(frozen=True)
class RoundOutcome:
    round: int
    alive_count: int
    ch_count: int
    packets_to_ch: int
    packets_to_bs: int
    energy_consumed: float
    total_residual: float


def deploy(config: SimConfig, rng: np.random.Generator) -> Network:
    """Scatter nodes uniformly over the field; classes are assigned in id blocks."""
    n = config.n_nodes
    pos = rng.uniform(0.0, config.field_side, size=(n, 2))
    counts = class_counts(n, config.het)
    classes = np.repeat(np.arange(4, dtype=np.int8), counts)
    energy = config.het.e0 * np.asarray(class_multipliers(config.het))[classes]
    return Network(
        x=pos[:, 0].copy(),
        y=pos[:, 1].copy(),
        node_class=classes,
        initial_energy=energy,
        residual=energy.copy(),
        alive=np.ones(n, dtype=bool),
        ch_blocked_until=np.zeros(n, dtype=np.int64),
    )


def election_probabilities(net: Network, ids: np.ndarray, avg_energy: float, config: SimConfig) -> np.ndarray:
    """Per-node election probability for ``ids``; same arithmetic as ``election_probability``."""
    het = config.het
    if config.strategy is Strategy.LEACH:
        return np.full(ids.size, het.p_opt)
    weights, denom = strategy_weights(config.strategy, het)
    w = np.asarray(weights)[net.node_class[ids]]
    p = het.p_opt * w * (net.residual[ids] / avg_energy) / denom
    return np.minimum(p, 1.0)


def thresholds(p: np.ndarray, round: int, eligible: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``ch_threshold``; also returns the epoch lengths used."""
    with np.errstate(divide="ignore", invalid="ignore"):
        epoch = np.maximum(1, np.floor(1.0 / p + 0.5)).astype(np.int64)
        epoch[~(p > 0)] = 1
        denom = 1.0 - p * (round % epoch)
        t = np.where(denom > 0, p / denom, 1.0)
    t = np.clip(t, 0.0, 1.0)
    t[~eligible | ~(p > 0)] = 0.0
    return t, epoch


def elect_chs(
    net: Network, round: int, avg_energy: float, config: SimConfig, rng: np.random.Generator
) -> np.ndarray:
    """Elect this round's cluster heads; returns their ids in ascending order.

    Draws one variate per live node even when the node is ineligible.
    Mutates ``net.ch_blocked_until`` for the winners.
    """
    if not avg_energy > 0:
        raise ValueError(f"avg_energy must be positive, got {avg_energy!r}")
    ids = np.flatnonzero(net.alive)
    variates = rng.random(ids.size)
    p = election_probabilities(net, ids, avg_energy, config)
    eligible = round >= net.ch_blocked_until[ids]
    t, epoch = thresholds(p, round, eligible)
    won = variates < t
    net.ch_blocked_until[ids[won]] = round + epoch[won]
    return ids[won]


def form_clusters(net: Network, ch_ids, config: SimConfig) -> ClusterAssignment:
    """Attach each live non-head to its nearest head (lowest id on ties), or the BS."""
    ch_ids = np.sort(np.asarray(ch_ids, dtype=np.int64))
    is_ch = np.zeros(len(net), dtype=bool)
    is_ch[ch_ids] = True
    members = np.flatnonzero(net.alive & ~is_ch)
    if ch_ids.size == 0:
        head = np.full(members.size, BS, dtype=np.int64)
    else:
        dist = np.hypot(
            net.x[members, None] - net.x[None, ch_ids],
            net.y[members, None] - net.y[None, ch_ids],
        )
        head = ch_ids[np.argmin(dist, axis=1)] if members.size else np.empty(0, dtype=np.int64)
    return ClusterAssignment(ch_ids=ch_ids, member_ids=members, head_of=head)


def apply_round_energy(
    net: Network, assignment: ClusterAssignment, config: SimConfig, round: int = 0
) -> RoundOutcome:
    """Charge every transmission, reception and aggregation of the round.

    Costs are deducted in full (residual floors at 0) and nodes left with
    nothing are marked dead only after all charges are applied.
    """
    radio = config.radio
    bits = radio.packet_bits
    cost = np.zeros(len(net))

    members, head = assignment.member_ids, assignment.head_of
    to_ch = head != BS
    m_ids, m_heads = members[to_ch], head[to_ch]
    d_member = np.hypot(net.x[m_ids] - net.x[m_heads], net.y[m_ids] - net.y[m_heads])
    cost[m_ids] += tx_energy_array(radio, bits, d_member)

    ch = assignment.ch_ids
    if ch.size:
        n_members = np.bincount(np.searchsorted(ch, m_heads), minlength=ch.size)
        d_bs = np.hypot(net.x[ch] - config.bs_x, net.y[ch] - config.bs_y)
        cost[ch] += (
            n_members * rx_energy(radio, bits)
            + aggregation_energy(radio, bits, 1) * (n_members + 1)
            + tx_energy_array(radio, bits, d_bs)
        )

    direct = members[~to_ch]
    d_direct = np.hypot(net.x[direct] - config.bs_x, net.y[direct] - config.bs_y)
    cost[direct] += tx_energy_array(radio, bits, d_direct)

    spent = np.minimum(cost, net.residual)
    net.residual -= spent
    net.alive &= net.residual > 0

    return RoundOutcome(
        round=round,
        alive_count=int(net.alive.sum()),
        ch_count=int(ch.size),
        packets_to_ch=int(m_ids.size),
        packets_to_bs=int(ch.size + direct.size),
        energy_consumed=float(spent.sum()),
        total_residual=float(net.residual.sum()),
    )


@dataclass(frozen=True)
class LifetimeModel:
    """Startup quantities behind the linear average-energy estimate."""

    e_total: float
    k_opt: int
    e_round: float
    rounds_estimate: int


def lifetime_model(config: SimConfig) -> LifetimeModel:
    n, side = config.n_nodes, config.field_side
    e_total = total_energy(n, config.het)
    k = optimal_cluster_count(config.radio, n, side, avg_dist_to_bs(side))
    e_round = round_energy(config.radio, n, k, side)
    return LifetimeModel(e_total, k, e_round, lifetime_estimate(e_total, e_round))


def average_energy(net: Network, round: int, model: LifetimeModel, n_nodes: int) -> float:
    """Linear estimate, falling back to the measured live-node mean once it runs out."""
    est = average_energy_estimate(round, model.rounds_estimate, model.e_total, n_nodes)
    if est > 0:
        return est
    return float(net.residual[net.alive].mean())


def run(config: SimConfig, on_round=None) -> tuple[list[RoundOutcome], SimSummary]:
    """Simulate until every node is dead or ``max_rounds`` rounds have run.

    ``on_round(net, outcome)`` is called after each round if given.
    """
    rng = make_rng(config.seed)
    net = deploy(config, rng)
    model = lifetime_model(config)
    series: list[RoundOutcome] = []
    for r in range(config.max_rounds):
        avg = average_energy(net, r, model, config.n_nodes)
        chs = elect_chs(net, r, avg, config, rng)
        assignment = form_clusters(net, chs, config)
        outcome = apply_round_energy(net, assignment, config, round=r)
        series.append(outcome)
        if on_round is not None:
            on_round(net, outcome)
        if outcome.alive_count == 0:
            break
    return series, summarize(series, config.n_nodes)
