"""
Triangle birth and death rates as mutation signals
==================================================

The share of triangles that disappear (or appear) between two snapshots is
normally small. A step where it exceeds a threshold is flagged.
"""

from netmeta import SynthConfig, classify_pair, delta_census, detect_mutations, generate, m3_rates

config = SynthConfig(seed=7, n0=400, steps=8, initial_degree=3, triangle_mode="whole",
                     triangle_close_per_step=3, triangle_break_per_step=3)
series, truth = generate(config)
tables = [delta_census(classify_pair(a, b)) for a, b in series.pairs()]
rates = m3_rates(series, tables)
for r in rates:
    print(f"{r.from_index}->{r.to_index}  birth {r.birth_rate:.4f}  death {r.death_rate:.4f}")

###############################################################################
# Raising the threshold can only remove events.

for threshold in (0.01, 0.03, 0.07):
    events = detect_mutations(rates, threshold)
    print(threshold, [(e.pair_from, e.side) for e in events])
