"""First-order radio energy model.

Transmit cost switches from a free-space (d^2) amplifier to a multipath
(d^4) amplifier at the crossover distance ``d0 = sqrt(eps_fs / eps_mp)``.
Also provides the uniform-deployment distance estimates used to derive the
optimal number of clusters and the expected network energy per round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadioParams:
    """Physical-layer constants. Defaults are the usual DEEC-family values."""

    e_elec: float = 50e-9  # J/bit, tx/rx electronics
    eps_fs: float = 10e-12  # J/bit/m^2
    eps_mp: float = 1.3e-15  # J/bit/m^4
    e_da: float = 5e-9  # J/bit/signal
    packet_bits: int = 4000

    def __post_init__(self):
        for name in ("e_elec", "eps_fs", "eps_mp", "e_da"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if int(self.packet_bits) != self.packet_bits or self.packet_bits <= 0:
            raise ValueError(f"packet_bits must be a positive integer, got {self.packet_bits!r}")
        d0 = math.sqrt(self.eps_fs / self.eps_mp)
        if not (d0 > 0 and math.isfinite(d0)):
            raise ValueError("eps_fs / eps_mp must give a finite positive threshold distance")

    @property
    def d0(self) -> float:
        return threshold_distance(self)


def _check_nonneg(**values):
    for name, value in values.items():
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value!r}")


def threshold_distance(params: RadioParams) -> float:
    """Distance at which the free-space and multipath branches coincide."""
    return math.sqrt(params.eps_fs / params.eps_mp)


def tx_energy(params: RadioParams, bits: float, distance: float) -> float:
    """Energy to transmit ``bits`` over ``distance`` metres.

    The multipath branch applies at ``distance >= d0``.
    """
    _check_nonneg(bits=bits, distance=distance)
    if distance < threshold_distance(params):
        return bits * params.e_elec + bits * (params.eps_fs * distance**2)
    return bits * params.e_elec + bits * (params.eps_mp * distance**4)


def rx_energy(params: RadioParams, bits: float) -> float:
    _check_nonneg(bits=bits)
    return bits * params.e_elec


def aggregation_energy(params: RadioParams, bits: float, signals: int) -> float:
    """Cost for a cluster head to fuse ``signals`` packets of ``bits`` each."""
    _check_nonneg(bits=bits, signals=signals)
    return params.e_da * bits * signals


def avg_dist_to_ch(field_side: float, k: float) -> float:
    """Expected member-to-head distance for ``k`` clusters on a square field."""
    if field_side <= 0:
        raise ValueError(f"field_side must be positive, got {field_side!r}")
    if k < 1:
        raise ValueError(f"cluster count must be >= 1, got {k!r}")
    return field_side / math.sqrt(2 * math.pi * k)


def avg_dist_to_bs(field_side: float) -> float:
    """Expected distance from a uniform point to the centre of the square."""
    _check_nonneg(field_side=field_side)
    return 0.765 * field_side / 2


def round_energy(params: RadioParams, n_nodes: int, k: float, field_side: float) -> float:
    """Network-wide energy spent in one round under the uniform-field approximation."""
    if n_nodes < 1:
        raise ValueError(f"n_nodes must be >= 1, got {n_nodes!r}")
    d_ch = avg_dist_to_ch(field_side, k)
    d_bs = avg_dist_to_bs(field_side)
    per_bit = (
        2 * n_nodes * params.e_elec
        + n_nodes * params.e_da
        + k * params.eps_mp * d_bs**4
        + n_nodes * params.eps_fs * d_ch**2
    )
    return params.packet_bits * per_bit


def optimal_cluster_count_continuous(
    params: RadioParams, n_nodes: int, field_side: float, d_to_bs: float
) -> float:
    if d_to_bs <= 0:
        raise ValueError(f"d_to_bs must be positive, got {d_to_bs!r}")
    if n_nodes <= 0 or field_side <= 0:
        raise ValueError("n_nodes and field_side must be positive")
    return (
        math.sqrt(n_nodes)
        / math.sqrt(2 * math.pi)
        * math.sqrt(params.eps_fs / params.eps_mp)
        * field_side
        / d_to_bs**2
    )


def optimal_cluster_count(params: RadioParams, n_nodes: int, field_side: float, d_to_bs: float) -> int:
    """Energy-minimising cluster count, rounded half-up to an integer >= 1."""
    k = optimal_cluster_count_continuous(params, n_nodes, field_side, d_to_bs)
    return max(1, math.floor(k + 0.5))


def tx_energy_array(params: RadioParams, bits: float, distance):
    """Vectorised :func:`tx_energy` over an array of distances."""
    d = np.asarray(distance, dtype=float)
    amp = np.where(d < threshold_distance(params), params.eps_fs * d**2, params.eps_mp * d**4)
    return bits * params.e_elec + bits * amp
