"""Undirected simple-graph snapshots and the time-ordered series built from them.

Node ids are non-negative integers (AS numbers for Internet data). An edge is
stored as its canonical ``(lo, hi)`` pair with ``lo < hi``. Iteration over
nodes and neighbours is always in ascending id order so every downstream
output is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import InvalidTimestamp, SelfLoop, SeriesError, UnknownNode

_MONTH_RE = re.compile(r"^(\d{4})(\d{2})$")


class Edge(NamedTuple):
    """Canonical undirected edge, ``lo < hi``."""

    lo: int
    hi: int

    @classmethod
    def of(cls, u: int, v: int) -> "Edge":
        u, v = int(u), int(v)
        if u == v:
            raise SelfLoop(u)
        if u < 0 or v < 0:
            raise ValueError(f"node ids must be non-negative, got ({u}, {v})")
        return cls(u, v) if u < v else cls(v, u)

    def __str__(self):
        return f"{self.lo}-{self.hi}"


def check_month(label) -> str:
    """Validate a ``YYYYMM`` label and return it as a string."""
    text = str(label)
    m = _MONTH_RE.match(text)
    if m is None or not 1 <= int(m.group(2)) <= 12:
        raise InvalidTimestamp(label)
    return text


def month_ordinal(label: str) -> int:
    """Months since year 0, so consecutive months differ by exactly 1."""
    text = check_month(label)
    return int(text[:4]) * 12 + int(text[4:]) - 1


def month_label(ordinal: int) -> str:
    year, month0 = divmod(ordinal, 12)
    return f"{year:04d}{month0 + 1:02d}"


@dataclass(frozen=True)
class Snapshot:
    """One graph g(i): its node set N(i), edge set E(i), index i and month T(i).

    Instances are immutable. Build them with :func:`build_snapshot` unless the
    edges are already canonical ``Edge`` values.
    """

    nodes: frozenset
    edges: frozenset
    index: int = 0
    timestamp: str | None = None
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        nodes = frozenset(int(u) for u in self.nodes)
        edges = frozenset(self.edges)
        adj: dict[int, list[int]] = {u: [] for u in nodes}
        for e in edges:
            if not isinstance(e, Edge) or not e.lo < e.hi:
                raise ValueError(f"edge {e!r} is not canonical")
            try:
                adj[e.lo].append(e.hi)
                adj[e.hi].append(e.lo)
            except KeyError as exc:
                raise ValueError(f"edge {e} has endpoint {exc.args[0]} outside the node set") from None
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_adj", {u: tuple(sorted(vs)) for u, vs in sorted(adj.items())})
        if self.timestamp is not None:
            object.__setattr__(self, "timestamp", check_month(self.timestamp))

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        """Sorted neighbour tuples keyed by node, in ascending node order."""
        return self._adj

    def sorted_nodes(self) -> list[int]:
        return list(self._adj)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, u):
        return u in self._adj

    def subgraph(self, keep: Iterable[int]) -> "Snapshot":
        """Subgraph induced on ``keep`` (ids absent from the snapshot are ignored)."""
        keep = frozenset(keep) & self.nodes
        edges = frozenset(e for e in self.edges if e.lo in keep and e.hi in keep)
        return Snapshot(keep, edges, self.index, self.timestamp)

    def with_index(self, index: int, timestamp: str | None = None) -> "Snapshot":
        return Snapshot(self.nodes, self.edges, index, timestamp if timestamp is not None else self.timestamp)


def build_snapshot(edges, isolates=(), index: int = 0, timestamp=None) -> Snapshot:
    """Build a snapshot from raw node pairs.

    Pairs are canonicalised and deduplicated; the node set is the union of
    all endpoints and ``isolates``.

    Raises
    ------
    SelfLoop
        If any pair is ``(u, u)``.
    InvalidTimestamp
        If ``timestamp`` is given and is not a ``YYYYMM`` label.
    """
    if timestamp is not None:
        timestamp = check_month(timestamp)
    canon = {Edge.of(u, v) for u, v in edges}
    nodes = {int(u) for u in isolates}
    for e in canon:
        nodes.add(e.lo)
        nodes.add(e.hi)
    return Snapshot(frozenset(nodes), frozenset(canon), index, timestamp)


def snapshot_from_edges(edges: Iterable[Edge], index: int = 0, timestamp=None) -> Snapshot:
    """Snapshot whose node set is exactly the endpoints of ``edges``."""
    edges = frozenset(edges)
    nodes = {u for e in edges for u in e}
    return Snapshot(frozenset(nodes), edges, index, timestamp)


def degree_sequence(g: Snapshot) -> dict[int, int]:
    """Degree of every node in ``g``, isolates included, ascending id order."""
    return {u: len(vs) for u, vs in g.adjacency.items()}


def neighbors(g: Snapshot, u: int) -> frozenset:
    try:
        return frozenset(g.adjacency[u])
    except KeyError:
        raise UnknownNode(u) from None


@dataclass(frozen=True)
class SnapshotSeries:
    """Time-ordered snapshots G = {g(1), ..., g(n)}.

    ``window`` is the spacing in months between consecutive snapshots; when
    it is ``None`` only the ordering invariants are enforced.
    """

    snapshots: tuple
    window: int | None = 1

    def __post_init__(self):
        snaps = tuple(self.snapshots)
        object.__setattr__(self, "snapshots", snaps)
        for a, b in zip(snaps, snaps[1:]):
            if not a.index < b.index:
                raise SeriesError(f"indices not strictly increasing: {a.index} then {b.index}")
            if a.timestamp is None or b.timestamp is None:
                if self.window is not None:
                    raise SeriesError("a declared window needs every snapshot timestamped")
                continue
            gap = month_ordinal(b.timestamp) - month_ordinal(a.timestamp)
            if gap <= 0:
                raise SeriesError(f"timestamps not strictly increasing: {a.timestamp} then {b.timestamp}")
            if self.window is not None and gap != self.window:
                raise SeriesError(
                    f"{a.timestamp} -> {b.timestamp} spans {gap} months, window is {self.window}"
                )

    def __len__(self):
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __getitem__(self, i):
        return self.snapshots[i]

    def pairs(self):
        """Consecutive ``(g(i), g(i+1))`` pairs."""
        return list(zip(self.snapshots, self.snapshots[1:]))

    def by_index(self, index: int) -> Snapshot:
        for g in self.snapshots:
            if g.index == index:
                return g
        raise KeyError(f"no snapshot with index {index}")


# -- canonical snapshot file -------------------------------------------------


def format_snapshot(g: Snapshot, header: Iterable[str] = ()) -> str:
    """Render ``g`` in the canonical text form.

    One ``lo hi`` line per edge sorted by ``(lo, hi)``, then ``%iso <id>``
    lines for isolated nodes. ``header`` lines are emitted as ``#`` comments.
    """
    lines = [f"# {h}" for h in header]
    lines.extend(f"{e.lo} {e.hi}" for e in g.sorted_edges())
    lines.extend(f"%iso {u}" for u, vs in g.adjacency.items() if not vs)
    return "".join(line + "\n" for line in lines)


def write_snapshot(g: Snapshot, path, header: Iterable[str] = ()) -> None:
    Path(path).write_text(format_snapshot(g, header), encoding="utf-8", newline="\n")


def read_snapshot(path, index: int = 0, timestamp=None) -> Snapshot:
    from .ingest import parse_edgelist

    path = Path(path)
    pairs, isolates = parse_edgelist(path.read_bytes(), source=str(path))
    return build_snapshot(pairs, isolates, index=index, timestamp=timestamp)
