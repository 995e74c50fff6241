"""
Counting edges, open wedges and triangles
=========================================

The census of a graph has three numbers: edges (m1), induced open wedges
(m2) and triangles (m3). Every pair of edges at a node is either an open
wedge or one corner of a triangle, which gives a cheap consistency check.
"""

from math import comb

import numpy as np

from netmeta import brute_census, build_snapshot, classify_pair, degree_sequence, delta_census, static_census

rng = np.random.default_rng(3)
pairs = [(u, v) for u in range(40) for v in range(u + 1, 40) if rng.random() < 0.15]
g = build_snapshot(pairs)

counts = static_census(g)
print("census:", counts)
print("brute force agrees:", counts == brute_census(g))
print("m2 + 3*m3 =", counts.m2 + 3 * counts.m3, "=", sum(comb(k, 2) for k in degree_sequence(g).values()))

###############################################################################
# Per edge class
# --------------
# Counting inside each class's own edges shows where triangles appear. A
# boundary edge always touches a born (or dead) node whose other edges
# are outer, so a boundary-only triangle cannot exist.

before = build_snapshot([(1, 2), (2, 3), (3, 1), (3, 4)], index=1)
after = build_snapshot([(2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 4)], index=2)
table = delta_census(classify_pair(before, after))
for side in ("birth", "death"):
    for cls in ("inner", "boundary", "outer"):
        print(f"{side:5s} {cls:8s}", tuple(table.cell(side, cls)))
