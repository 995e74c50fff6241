"""Three-node motif census: M1 (edge), M2 (open 2-path), M3 (triangle).

Counts are induced: a triangle contributes one M3 and no M2. For any graph
``m2 + 3*m3`` equals the wedge total ``sum_u C(deg u, 2)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import CapExceeded
from .evolution import CLASSES, SIDES, EvolutionDelta
from .graph import Snapshot, snapshot_from_edges

BRUTE_CAP = 500


class MotifCounts(NamedTuple):
    m1: int
    m2: int
    m3: int

    def __add__(self, other):
        return MotifCounts(self.m1 + other.m1, self.m2 + other.m2, self.m3 + other.m3)


def wedge_count(g: Snapshot) -> int:
    return sum(d * (d - 1) // 2 for d in map(len, g.adjacency.values()))


def triangle_count(g: Snapshot) -> int:
    """Triangles via the forward algorithm on a (degree, id) node ranking.

    Each triangle is seen exactly once, from its lowest-ranked vertex.
    """
    adj = g.adjacency
    rank = {u: r for r, u in enumerate(sorted(adj, key=lambda u: (len(adj[u]), u)))}
    out = {u: {v for v in vs if rank[v] > rank[u]} for u, vs in adj.items()}
    total = 0
    for u, higher in out.items():
        for v in higher:
            total += len(higher & out[v])
    return total


def triangles(g: Snapshot, limit: int = 10_000) -> list[tuple[int, int, int]]:
    """Enumerate triangles as ascending ``(a, b, c)`` triples, at most ``limit``."""
    adj = g.adjacency
    found = []
    for a, nbrs in adj.items():
        near = set(nbrs)
        for b in nbrs:
            if b <= a:
                continue
            for c in adj[b]:
                if c > b and c in near:
                    found.append((a, b, c))
                    if len(found) >= limit:
                        return found
    return found


def open_wedges(g: Snapshot, limit: int = 10_000) -> list[tuple[int, int, int]]:
    """Enumerate induced 2-paths as ``(end, centre, end)`` with ascending ends."""
    adj = g.adjacency
    found = []
    for centre, nbrs in adj.items():
        for x, y in itertools.combinations(nbrs, 2):
            if y not in adj[x]:
                found.append((x, centre, y))
                if len(found) >= limit:
                    return found
    return found


def static_census(g: Snapshot) -> MotifCounts:
    m3 = triangle_count(g)
    return MotifCounts(len(g.edges), wedge_count(g) - 3 * m3, m3)


def brute_census(g: Snapshot, cap: int = BRUTE_CAP) -> MotifCounts:
    """Census by checking every node triple. Test oracle; O(n^3)."""
    n = len(g.nodes)
    if n > cap:
        raise CapExceeded(f"{n} nodes exceeds the brute-force cap of {cap}")
    edges = g.edges
    m2 = m3 = 0
    for a, b, c in itertools.combinations(sorted(g.nodes), 3):
        k = ((a, b) in edges) + ((a, c) in edges) + ((b, c) in edges)
        if k == 3:
            m3 += 1
        elif k == 2:
            m2 += 1
    return MotifCounts(len(edges), m2, m3)


def edge_census(edges: Iterable) -> MotifCounts:
    """Census of the graph made of exactly ``edges`` and their endpoints."""
    return static_census(snapshot_from_edges(edges))


@dataclass(frozen=True)
class CensusTable:
    """Motif counts of the six changed-edge subgraphs of one snapshot pair."""

    from_index: int
    to_index: int
    birth_inner: MotifCounts
    birth_boundary: MotifCounts
    birth_outer: MotifCounts
    death_inner: MotifCounts
    death_boundary: MotifCounts
    death_outer: MotifCounts

    def cell(self, side: str, cls: str) -> MotifCounts:
        if side not in SIDES or cls not in CLASSES:
            raise ValueError(f"unknown cell ({side!r}, {cls!r})")
        return getattr(self, f"{side}_{cls}")

    def side_total(self, side: str) -> MotifCounts:
        total = MotifCounts(0, 0, 0)
        for cls in CLASSES:
            total = total + self.cell(side, cls)
        return total

    def row(self) -> tuple[int, ...]:
        """The 18 counts: birth inner/boundary/outer then death, M1 M2 M3 each."""
        return tuple(n for side in SIDES for cls in CLASSES for n in self.cell(side, cls))


def census_columns() -> list[str]:
    return [
        f"{side}_{cls}_m{k}" for side in SIDES for cls in CLASSES for k in (1, 2, 3)
    ]


def delta_census(delta: EvolutionDelta) -> CensusTable:
    """Census each of the six edge classes as its own subgraph."""
    cells = {
        f"{side}_{cls}": edge_census(delta.edges(side, cls))
        for side in SIDES
        for cls in CLASSES
    }
    return CensusTable(delta.from_index, delta.to_index, **cells)


class M3Rate(NamedTuple):
    """M3 birth and death rates of one pair; ``None`` when the denominator is 0."""

    from_index: int
    to_index: int
    birth_rate: float | None
    death_rate: float | None


def m3_rates(series, tables, static_m3: dict | None = None) -> list[M3Rate]:
    """Triangle turnover per consecutive pair.

    The death rate divides the pair's dead M3 total by the triangle count of
    the earlier snapshot; the birth rate divides born M3 by the triangle
    count of the later snapshot. ``static_m3`` maps snapshot index to
    triangle count and is computed from ``series`` when omitted.
    """
    if static_m3 is None:
        static_m3 = {g.index: triangle_count(g) for g in series}
    out = []
    for t in tables:
        before, after = static_m3[t.from_index], static_m3[t.to_index]
        born = t.side_total("birth").m3
        dead = t.side_total("death").m3
        out.append(M3Rate(
            t.from_index,
            t.to_index,
            born / after if after else None,
            dead / before if before else None,
        ))
    return out
