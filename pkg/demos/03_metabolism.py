"""
Metabolism rate of a synthetic series
=====================================

The metabolism rate averages, over consecutive snapshots, the net edge
change relative to the earlier snapshot's size. A synthetic series with
planted churn shows how the rate and the per-class trend fits behave.
"""

from netmeta import SynthConfig, classify_pair, exp_trend_fit, generate, metabolism_rate
from netmeta.metrics import metabolism_terms

series, truth = generate(SynthConfig(seed=42, n0=200, steps=24))
deltas = [classify_pair(a, b) for a, b in series.pairs()]

for scope in ("all", "inner", "boundary", "outer"):
    print(f"r[{scope}] = {metabolism_rate(series, deltas, scope):.4f}")

terms = metabolism_terms(series, deltas)
print("first terms:", [round(t, 4) for t in terms[:5]])

###############################################################################
# Births are a fixed share of a growing node set, so boundary births drift
# upward. An exponential trend with an offset captures the drift.

born_boundary = [len(d.born_boundary) for d in deltas]
print("born boundary:", born_boundary)
fit = exp_trend_fit(range(1, len(born_boundary) + 1), born_boundary)
print(f"trend ~ {fit.a:.3g} * exp({fit.b:.3g} x) + {fit.c:.3g}  (sse {fit.sse:.3g})")
