import dataclasses

import numpy as np
import pytest

from hetwsn.election import (
    HeterogeneityParams,
    NodeClass,
    Strategy,
    ch_threshold,
    election_probability,
)
from hetwsn.energy import RadioParams, aggregation_energy, rx_energy, tx_energy
from hetwsn.simulator import (
    BS,
    SimConfig,
    apply_round_energy,
    average_energy,
    deploy,
    elect_chs,
    form_clusters,
    lifetime_model,
    make_rng,
    run,
)

PAPER = SimConfig()


def test_config_defaults():
    assert (PAPER.n_nodes, PAPER.field_side, PAPER.bs_x, PAPER.bs_y) == (100, 100.0, 50.0, 50.0)
    assert PAPER.strategy is Strategy.BEENISH and PAPER.max_rounds == 20000


@pytest.mark.parametrize("kwargs", [{"n_nodes": 0}, {"field_side": 0}, {"max_rounds": 0}, {"seed": -1},
                                    {"seed": 2**64}])
def test_config_rejects(kwargs):
    with pytest.raises(ValueError):
        SimConfig(**kwargs)


class TestDeploy:
    def test_class_blocks(self):
        net = deploy(PAPER, make_rng(1))
        cls = net.node_class
        assert (cls[:50] == NodeClass.NORMAL).all()
        assert (cls[50:85] == NodeClass.ADVANCED).all()
        assert (cls[85:97] == NodeClass.SUPER).all()
        assert (cls[97:] == NodeClass.ULTRA_SUPER).all()
        assert net.residual.sum() == pytest.approx(92.0, rel=1e-12)
        assert ((net.x >= 0) & (net.x <= 100) & (net.y >= 0) & (net.y <= 100)).all()
        assert (net.ch_blocked_until == 0).all() and net.alive.all()

    def test_same_seed_same_nodes(self):
        assert deploy(PAPER, make_rng(9)).nodes() == deploy(PAPER, make_rng(9)).nodes()

    def test_single_node(self):
        cfg = SimConfig(n_nodes=1, het=HeterogeneityParams(m=0))
        (node,) = deploy(cfg, make_rng(3)).nodes()
        assert node.node_class is NodeClass.NORMAL and node.residual_energy == 0.5
        assert 0 <= node.x <= 100 and 0 <= node.y <= 100


class TestElect:
    def test_all_ineligible(self, network_factory):
        net = network_factory(np.random.default_rng(0).uniform(0, 100, (20, 2)))
        net.ch_blocked_until[:] = 10
        assert elect_chs(net, 5, 0.5, PAPER, make_rng(0)).size == 0

    def test_forced_at_epoch_end(self, network_factory):
        # p = p_opt = 0.1 (residual == avg) -> round 9 is the last of the epoch
        cfg = SimConfig(n_nodes=1, het=HeterogeneityParams(m=0))
        for seed in range(20):
            net = network_factory([[10.0, 10.0]])
            assert elect_chs(net, 9, 0.5, cfg, make_rng(seed)).tolist() == [0]
            assert net.ch_blocked_until[0] == 19

    def test_dead_nodes_skipped(self, network_factory):
        cfg = SimConfig(n_nodes=2, het=HeterogeneityParams(m=0))
        net = network_factory([[1, 1], [2, 2]], alive=[False, True])
        assert elect_chs(net, 9, 0.5, cfg, make_rng(0)).tolist() == [1]

    def test_one_variate_per_live_node(self, network_factory):
        net = network_factory(np.zeros((7, 2)), alive=[1, 0, 1, 1, 0, 1, 1])
        net.ch_blocked_until[:3] = 99
        rng = make_rng(5)
        elect_chs(net, 0, 0.5, PAPER, rng)
        ref = make_rng(5)
        ref.random(5)
        assert rng.random() == ref.random()

    def test_golden_round_zero(self):
        cfg = SimConfig(seed=12345)
        rng = make_rng(cfg.seed)
        net = deploy(cfg, rng)
        avg = average_energy(net, 0, lifetime_model(cfg), cfg.n_nodes)
        assert avg == pytest.approx(0.92)
        chs = elect_chs(net, 0, avg, cfg, rng)
        assert chs.tolist() == [52, 56, 62, 68, 72, 74, 75, 80, 87, 88, 89, 91, 92, 97, 98]

        # re-derive two decisions with the scalar rule
        replay = make_rng(cfg.seed)
        replay.uniform(0, 100, size=(100, 2))
        variates = replay.random(100)
        for i in (52, 10):
            p = election_probability(Strategy.BEENISH, NodeClass(int(net.node_class[i])), net.residual[i], avg, cfg.het)
            assert (variates[i] < ch_threshold(p, 0, True)) == (i in chs)
        assert election_probability(Strategy.BEENISH, NodeClass.ADVANCED, 1.25, 0.92, cfg.het) == \
            pytest.approx(0.1 * 2.5 * (1.25 / 0.92) / 1.84, rel=1e-14)

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_vectorised_matches_scalar_rule(self, strategy):
        cfg = SimConfig(strategy=strategy, seed=4)
        rng = make_rng(4)
        net = deploy(cfg, rng)
        gen = np.random.default_rng(1)
        net.residual *= gen.uniform(0.05, 1.0, 100)
        net.alive[gen.choice(100, 10, replace=False)] = False
        net.ch_blocked_until[:] = gen.integers(0, 40, 100)
        before = net.copy()
        r, avg = 31, 0.37
        chs = elect_chs(net, r, avg, cfg, rng)

        replay = make_rng(4)
        replay.uniform(0, 100, size=(100, 2))
        ids = np.flatnonzero(before.alive)
        variates = dict(zip(ids.tolist(), replay.random(ids.size)))
        expected = []
        for i in ids:
            p = election_probability(strategy, NodeClass(int(before.node_class[i])), before.residual[i], avg, cfg.het)
            if variates[i] < ch_threshold(p, r, r >= before.ch_blocked_until[i]):
                expected.append(i)
        assert chs.tolist() == expected


class TestFormClusters:
    def test_single_head(self, network_factory):
        net = network_factory([[0, 0], [5, 5], [9, 1], [50, 50]])
        a = form_clusters(net, [2], PAPER)
        assert a.member_of == {0: 2, 1: 2, 3: 2}

    def test_tie_goes_to_lowest_id(self, network_factory):
        xy = np.zeros((8, 2))
        xy[3] = [10, 0]
        xy[7] = [-10, 0]
        xy[0] = [0, 0]
        xy[[1, 2, 4, 5, 6]] = [[10, 50], [10, 60], [10, 70], [10, 80], [10, 90]]
        net = network_factory(xy)
        a = form_clusters(net, [7, 3], PAPER)
        assert a.member_of[0] == 3
        assert a.ch_ids.tolist() == [3, 7]

    def test_no_heads_means_direct(self, network_factory):
        net = network_factory([[0, 0], [1, 1], [2, 2]], alive=[True, False, True])
        a = form_clusters(net, [], PAPER)
        assert a.member_of == {0: BS, 2: BS}

    def test_dead_nodes_excluded(self, network_factory):
        net = network_factory([[0, 0], [1, 1], [2, 2]], alive=[True, False, True])
        assert form_clusters(net, [0], PAPER).member_of == {2: 0}


class TestApplyRoundEnergy:
    def test_no_live_nodes(self, network_factory):
        net = network_factory([[0, 0], [1, 1]], alive=[False, False])
        net.residual[:] = 0
        out = apply_round_energy(net, form_clusters(net, [], PAPER), PAPER)
        assert (out.alive_count, out.ch_count, out.packets_to_ch, out.packets_to_bs, out.energy_consumed) == (0, 0, 0, 0, 0)

    def test_hand_sum_one_cluster(self, network_factory):
        radio = RadioParams()
        # CH at (40, 50), BS at (50, 50); members 3 m and 4 m away
        net = network_factory([[40, 50], [43, 50], [40, 54]])
        a = form_clusters(net, [0], PAPER)
        out = apply_round_energy(net, a, PAPER, round=3)
        l = radio.packet_bits
        expected = (tx_energy(radio, l, 3.0) + tx_energy(radio, l, 4.0) + 2 * rx_energy(radio, l)
                    + aggregation_energy(radio, l, 3) + tx_energy(radio, l, 10.0))
        assert out.energy_consumed == pytest.approx(expected, rel=1e-12)
        assert (out.round, out.packets_to_ch, out.packets_to_bs, out.ch_count, out.alive_count) == (3, 2, 1, 1, 3)
        assert net.residual[1] == pytest.approx(0.5 - tx_energy(radio, l, 3.0), rel=1e-12)

    def test_overdraw_kills_but_counts_packet(self, network_factory):
        net = network_factory([[40, 50], [43, 50]], energy=[0.5, 1e-6])
        out = apply_round_energy(net, form_clusters(net, [0], PAPER), PAPER)
        assert net.residual[1] == 0 and not net.alive[1]
        assert out.packets_to_ch == 1 and out.alive_count == 1
        assert out.energy_consumed == pytest.approx(1e-6 + (0.5 - net.residual[0]), rel=1e-12)

    def test_direct_transmission(self, network_factory):
        net = network_factory([[50, 80], [50, 20]])
        out = apply_round_energy(net, form_clusters(net, [], PAPER), PAPER)
        assert out.packets_to_bs == 2 and out.packets_to_ch == 0
        assert out.energy_consumed == pytest.approx(2 * tx_energy(RadioParams(), 4000, 30.0), rel=1e-12)


@pytest.fixture(scope="module")
def traced_run():
    """One paper-config run with per-round snapshots."""
    snaps = []
    series, summary = run(SimConfig(seed=21), on_round=lambda net, o: snaps.append(
        (net.residual.copy(), net.alive.copy(), net.ch_blocked_until.copy())))
    return series, summary, snaps


class TestRun:
    def test_instant_death(self):
        cfg = SimConfig(het=HeterogeneityParams(e0=1e-9), seed=1)
        series, summary = run(cfg)
        assert len(series) == 1 and series[0].alive_count == 0
        assert (summary.first_death_round, summary.half_death_round, summary.last_death_round) == (0, 0, 0)

    def test_deterministic(self):
        cfg = SimConfig(seed=77, n_nodes=40)
        assert run(cfg) == run(cfg)

    def test_seed_matters(self):
        assert run(SimConfig(seed=1, n_nodes=40))[0] != run(SimConfig(seed=2, n_nodes=40))[0]

    def test_truncation(self):
        series, summary = run(SimConfig(max_rounds=50))
        assert len(series) == 50 and summary.truncated
        assert summary.last_death_round == 50

    def test_conservation(self, traced_run):
        series, _, snaps = traced_run
        prev = 92.0
        for o, (res, _, _) in zip(series, snaps):
            assert prev - res.sum() == pytest.approx(o.energy_consumed, rel=1e-9, abs=1e-15)
            prev = res.sum()
        assert sum(o.energy_consumed for o in series) + series[-1].total_residual == pytest.approx(92.0, rel=1e-9)

    def test_residual_monotone_and_death_permanent(self, traced_run):
        _, _, snaps = traced_run
        for (r0, a0, _), (r1, a1, _) in zip(snaps, snaps[1:]):
            assert (r1 <= r0).all()
            assert not (a1 & ~a0).any()
            assert ((r1 > 0) == a1).all()

    def test_alive_counts_match(self, traced_run):
        series, summary, snaps = traced_run
        assert [o.alive_count for o in series] == [int(a.sum()) for _, a, _ in snaps]
        assert series[-1].alive_count == 0 and not summary.truncated

    def test_dead_nodes_never_act(self):
        cfg = SimConfig(seed=5, n_nodes=30)
        rng = make_rng(cfg.seed)
        net = deploy(cfg, rng)
        model = lifetime_model(cfg)
        for r in range(4000):
            if not net.alive.any():
                break
            dead = ~net.alive
            before = net.residual.copy()
            chs = elect_chs(net, r, average_energy(net, r, model, cfg.n_nodes), cfg, rng)
            assert not dead[chs].any()
            a = form_clusters(net, chs, cfg)
            roles = np.concatenate([a.ch_ids, a.member_ids])
            assert sorted(roles.tolist()) == np.flatnonzero(net.alive).tolist()
            assert set(a.head_of.tolist()) <= set(a.ch_ids.tolist()) | {BS}
            apply_round_energy(net, a, cfg, round=r)
            assert (net.residual[dead] == before[dead]).all()

    def test_ch_count_band_early_life(self, traced_run):
        series, _, _ = traced_run
        lifetime = series[-1].round + 1
        early = [o.ch_count for o in series[: max(1, lifetime // 10)]]
        assert 0.3 * 10 <= np.mean(early) <= 3 * 10

    def test_leach_runs(self):
        series, summary = run(dataclasses.replace(PAPER, strategy=Strategy.LEACH, seed=3, n_nodes=30))
        assert series[-1].alive_count == 0
