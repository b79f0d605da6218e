import numpy as np
import pytest

from hetwsn.simulator import Network


def make_network(xy, energy=0.5, classes=None, alive=None):
    xy = np.asarray(xy, dtype=float)
    n = len(xy)
    energy = np.broadcast_to(np.asarray(energy, dtype=float), (n,)).copy()
    return Network(
        x=xy[:, 0].copy(),
        y=xy[:, 1].copy(),
        node_class=np.zeros(n, dtype=np.int8) if classes is None else np.asarray(classes, dtype=np.int8),
        initial_energy=energy.copy(),
        residual=energy,
        alive=np.ones(n, dtype=bool) if alive is None else np.asarray(alive, dtype=bool),
        ch_blocked_until=np.zeros(n, dtype=np.int64),
    )


@pytest.fixture
def network_factory():
    return make_network


ACCEPTANCE_LOG: list[str] = []


@pytest.fixture
def criterion():
    """Record and assert one acceptance criterion: ``criterion(n, title, ok, detail)``."""

    def check(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LOG.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
