"""
Degree distribution and structure entropy
=========================================

Two summaries of one snapshot: the power-law exponent of its degree tail
and the normalized entropy of degree shares. A regular graph has entropy
exactly 1; hubs pull it down.
"""

import numpy as np

from netmeta import build_snapshot, powerlaw_fit, structure_entropy

###############################################################################
# Degrees drawn from a discrete power law with exponent 2.1.

rng = np.random.default_rng(0)
k = np.arange(1, 100_001)
p = k ** -2.1
degrees = rng.choice(k, size=10_000, p=p / p.sum())

fit = powerlaw_fit(degrees.tolist())
print(f"MLE gamma = {fit.gamma:.3f}  (kmin={fit.kmin}, tail={fit.n_tail})")
print(f"half-shift approximation = {fit.gamma_approx:.3f}")
print(f"log-log CCDF regression = {fit.gamma_regression:.3f}")

###############################################################################
# Entropy falls as a hub absorbs more links.

ring = build_snapshot([(v, (v + 1) % 12) for v in range(12)])
print("ring:", structure_entropy(ring))
star = build_snapshot([(0, v) for v in range(1, 12)])
print("star:", round(structure_entropy(star), 4))

two_hubs = build_snapshot([(0, 1)] + [(0, v) for v in range(2, 7)] + [(1, v) for v in range(7, 12)])
closed = build_snapshot(sorted(two_hubs.edges) + [(0, v) for v in range(7, 12)])
print(f"two hubs {structure_entropy(two_hubs):.4f} -> after closing triangles {structure_entropy(closed):.4f}")
