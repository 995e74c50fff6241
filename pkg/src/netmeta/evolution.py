"""Birth/death decomposition of a snapshot pair.

Nodes split into steady (in both snapshots), dead (earlier only) and born
(later only). Each changed edge is then classed by its endpoints:

========  =============================================
outer     both endpoints dead (or both born)
boundary  one endpoint dead (or born), the other steady
inner     both endpoints steady, edge present in one snapshot only
========  =============================================
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OrderViolation, UnknownNode
from .graph import Edge, Snapshot

CLASSES = ("inner", "boundary", "outer")
SIDES = ("birth", "death")


@dataclass(frozen=True)
class EvolutionDelta:
    from_index: int
    to_index: int
    steady_nodes: frozenset
    born_nodes: frozenset
    dead_nodes: frozenset
    dead_outer: frozenset
    dead_boundary: frozenset
    dead_inner: frozenset
    born_outer: frozenset
    born_boundary: frozenset
    born_inner: frozenset

    def edges(self, side: str, cls: str) -> frozenset:
        """Edge set for ``side`` in {birth, death} and ``cls`` in {inner, boundary, outer}."""
        prefix = {"birth": "born", "death": "dead"}[side]
        if cls not in CLASSES:
            raise ValueError(f"unknown edge class {cls!r}")
        return getattr(self, f"{prefix}_{cls}")

    @property
    def born_edges(self) -> frozenset:
        return self.born_inner | self.born_boundary | self.born_outer

    @property
    def dead_edges(self) -> frozenset:
        return self.dead_inner | self.dead_boundary | self.dead_outer

    def counts(self) -> dict:
        """Set sizes in ``deltas.csv`` column order."""
        return {
            "n_steady": len(self.steady_nodes),
            "n_born": len(self.born_nodes),
            "n_dead": len(self.dead_nodes),
            "e_dead_outer": len(self.dead_outer),
            "e_dead_boundary": len(self.dead_boundary),
            "e_dead_inner": len(self.dead_inner),
            "e_born_outer": len(self.born_outer),
            "e_born_boundary": len(self.born_boundary),
            "e_born_inner": len(self.born_inner),
        }


def _split_edges(edges, changing):
    outer, boundary, inner = set(), set(), set()
    for e in edges:
        a, b = e.lo in changing, e.hi in changing
        if a and b:
            outer.add(e)
        elif a or b:
            boundary.add(e)
        else:
            inner.add(e)
    return frozenset(outer), frozenset(boundary), frozenset(inner)


def classify_pair(g_i: Snapshot, g_j: Snapshot) -> EvolutionDelta:
    """Decompose the change from ``g_i`` to ``g_j``.

    Edges in both snapshots (steady edges) are not part of the result.

    Raises
    ------
    OrderViolation
        If ``g_i.index >= g_j.index``.
    """
    if g_i.index >= g_j.index:
        raise OrderViolation(f"from index {g_i.index} must precede to index {g_j.index}")
    steady = g_i.nodes & g_j.nodes
    dead = g_i.nodes - g_j.nodes
    born = g_j.nodes - g_i.nodes
    # An edge of E(i) touching a dead node cannot be in E(i+1), so
    # E(i) - E(i+1) covers every dead-side edge.
    d_outer, d_boundary, d_inner = _split_edges(g_i.edges - g_j.edges, dead)
    b_outer, b_boundary, b_inner = _split_edges(g_j.edges - g_i.edges, born)
    return EvolutionDelta(
        from_index=g_i.index,
        to_index=g_j.index,
        steady_nodes=steady,
        born_nodes=born,
        dead_nodes=dead,
        dead_outer=d_outer,
        dead_boundary=d_boundary,
        dead_inner=d_inner,
        born_outer=b_outer,
        born_boundary=b_boundary,
        born_inner=b_inner,
    )


@dataclass(frozen=True)
class EgoDelta(EvolutionDelta):
    """Delta restricted to one node's combined ego network, plus its steady edges."""

    focal: int = -1
    steady_edges: frozenset = field(default_factory=frozenset)

    def labeled_edges(self) -> list[tuple[Edge, str]]:
        """Every ego edge tagged ``steady``, ``born`` or ``dead``, sorted by edge."""
        out = [(e, "steady") for e in self.steady_edges]
        out += [(e, "born") for e in self.born_edges]
        out += [(e, "dead") for e in self.dead_edges]
        return sorted(out)


def ego_nodes(g_i: Snapshot, g_j: Snapshot, focal: int) -> frozenset:
    """``focal`` together with its neighbours in either snapshot."""
    if focal not in g_i and focal not in g_j:
        raise UnknownNode(focal)
    hood = {focal}
    for g in (g_i, g_j):
        if focal in g:
            hood.update(g.adjacency[focal])
    return frozenset(hood)


def ego_delta(g_i: Snapshot, g_j: Snapshot, focal: int) -> EgoDelta:
    """Classify the pair restricted to the subgraphs induced on the focal's ego set."""
    hood = ego_nodes(g_i, g_j, focal)
    sub_i, sub_j = g_i.subgraph(hood), g_j.subgraph(hood)
    base = classify_pair(sub_i, sub_j)
    return EgoDelta(
        **{name: getattr(base, name) for name in EvolutionDelta.__dataclass_fields__},
        focal=focal,
        steady_edges=sub_i.edges & sub_j.edges,
    )
