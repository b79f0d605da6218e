"""Paired multi-seed comparison of LEACH, DEEC, EDEEC and BEENISH."""
import sys

from hetwsn.election import Strategy
from hetwsn.simulator import SimConfig
from hetwsn.sweep import compare

n_seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
base = SimConfig()
result = compare([(s, base) for s in Strategy], range(1, n_seeds + 1))

print(f"medians over {n_seeds} paired seeds (IQR in brackets)")
print(f"{'':8} {'first death':>18} {'last death':>18} {'packets to BS':>20}")
for r in result.results:
    cells = [f"{r.stats[m].median:9.1f} [{r.stats[m].iqr:6.1f}]" for m in ("first_death", "last_death", "packets_to_bs")]
    print(f"{r.strategy.value:8} {cells[0]:>18} {cells[1]:>18} {cells[2]:>20}")

print("\nranking by median (best first):")
for metric, order in result.ranking.items():
    print(f"  {metric:14} {' > '.join(s.value for s in order)}")
