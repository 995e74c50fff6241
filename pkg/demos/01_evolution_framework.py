"""
Steady, born and dead: decomposing one step of a network
========================================================

Two snapshots of the same network share some nodes and lose or gain others.
Every changed edge falls into exactly one of six classes, depending on
whether its endpoints survived.
"""

from netmeta import build_snapshot, classify_pair

###############################################################################
# A small network before and after one step. Nodes 1-4 leave, 10-13 arrive.

before = build_snapshot(
    [(1, 2), (2, 3), (3, 4), (1, 5), (2, 5), (4, 8), (5, 6), (6, 7), (7, 8), (8, 9), (5, 8)],
    index=1,
)
after = build_snapshot(
    [(5, 6), (6, 7), (7, 8), (8, 9), (5, 7), (10, 5), (10, 11), (11, 6), (12, 9), (13, 12), (13, 8)],
    index=2,
)

delta = classify_pair(before, after)
print("steady:", sorted(delta.steady_nodes))
print("dead:  ", sorted(delta.dead_nodes))
print("born:  ", sorted(delta.born_nodes))

###############################################################################
# Edges among dead nodes are outer, edges with one dead endpoint are boundary,
# and an edge that vanished between two survivors is inner.

for side in ("death", "birth"):
    for cls in ("outer", "boundary", "inner"):
        edges = sorted(tuple(e) for e in delta.edges(side, cls))
        print(f"{side:5s} {cls:8s} {edges}")

###############################################################################
# The counts are what ``netmeta classify`` writes to deltas.csv.

print(delta.counts())
