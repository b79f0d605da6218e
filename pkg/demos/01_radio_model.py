"""The first-order radio model and the cluster count it implies."""
import numpy as np

from hetwsn.energy import (
    RadioParams, avg_dist_to_bs, optimal_cluster_count_continuous, round_energy,
    threshold_distance, tx_energy,
)

radio = RadioParams()
d0 = threshold_distance(radio)
print(f"crossover distance d0 = {d0:.2f} m")

# Transmit cost of one 4000-bit packet: d^2 below d0, d^4 above.
for d in [0, 25, 50, d0, 100, 150]:
    print(f"  d = {d:6.1f} m  ->  {tx_energy(radio, radio.packet_bits, d) * 1e3:.4f} mJ")

# Expected network energy per round as a function of the number of clusters,
# and the closed-form optimum for a 100-node, 100 m field.
side, n = 100.0, 100
ks = np.arange(1, 61)
e = [round_energy(radio, n, k, side) for k in ks]
print(f"\nbrute-force best k = {ks[int(np.argmin(e))]}")
print(f"closed-form k_opt  = {optimal_cluster_count_continuous(radio, n, side, avg_dist_to_bs(side)):.2f}")
