"""How each strategy turns residual energy into a cluster-head probability."""
from hetwsn.election import (
    HeterogeneityParams, NodeClass, Strategy, ch_threshold, class_counts, election_probability,
    epoch_length, total_energy,
)

het = HeterogeneityParams()
print("class sizes (normal, advanced, super, ultra):", class_counts(100, het))
print(f"total energy: {total_energy(100, het):.1f} J")

avg = total_energy(100, het) / 100
print(f"\nprobability with residual == network average ({avg:.2f} J):")
for s in Strategy:
    row = "  ".join(f"{c.name.lower():>11}={election_probability(s, c, avg, avg, het):.4f}" for c in NodeClass)
    print(f"  {s.value:8} {row}")

# Energy-rich nodes win more often and have shorter rotation epochs.
print("\nBEENISH ultra-super node at various residuals:")
for frac in (0.25, 0.5, 1.0, 2.0):
    p = election_probability(Strategy.BEENISH, NodeClass.ULTRA_SUPER, frac * avg, avg, het)
    print(f"  residual={frac:4.2f}*avg  p={p:.4f}  epoch={epoch_length(p):3d} rounds")

# Threshold grows through the epoch until election is certain in its last round.
p = 0.1
print("\nthreshold over one epoch, p = 0.1:", [round(ch_threshold(p, r, True), 3) for r in range(10)])
