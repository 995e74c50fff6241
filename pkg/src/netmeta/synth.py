"""Seeded synthetic temporal networks with recorded ground truth.

Randomness comes from NumPy's PCG64 bit generator seeded with
``SynthConfig.seed``; every random choice is made over a sorted candidate
list, so a seed fixes the output byte for byte.

Each step from g(t) to g(t+1) applies, in order:

1. deaths: the ``floor(node_death_rate * |N|)`` lowest-degree nodes die
   (ties broken by ascending id), taking their edges with them;
2. births: ``floor(node_birth_rate * |N|)`` fresh ids each attach to 1-3
   surviving or earlier-born nodes, chosen uniformly or by degree;
3. rewiring: ``inner_rewire_per_step`` survivor-survivor edges are removed
   and as many new survivor-survivor edges added;
4. triangle closures and breaks among survivors.

``|N|`` is the node count at the start of the step. Edges touched by one
operation are never touched again in the same step, so the truth lists map
one-to-one onto the classes a classifier will recover.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import ConfigError
from .graph import Edge, SnapshotSeries, Snapshot, month_label, month_ordinal

ATTACHMENTS = ("uniform", "preferential")
TRIANGLE_MODES = ("edge", "whole")


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    n0: int = 100
    steps: int = 12
    node_birth_rate: float = 0.05
    node_death_rate: float = 0.03
    inner_rewire_per_step: int = 4
    triangle_close_per_step: int = 3
    triangle_break_per_step: int = 2
    attachment: str = "preferential"
    # "edge": close an open wedge / drop one triangle edge.
    # "whole": add or remove all three edges of a triangle at once.
    triangle_mode: str = "edge"
    initial_degree: int = 2
    start: str = "199801"

    def __post_init__(self):
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.n0 < 3:
            raise ConfigError("n0 must be at least 3")
        if self.steps < 0:
            raise ConfigError("steps must be non-negative")
        for name in ("node_birth_rate", "node_death_rate"):
            if not 0.0 <= getattr(self, name) < 1.0:
                raise ConfigError(f"{name} must lie in [0, 1)")
        for name in ("inner_rewire_per_step", "triangle_close_per_step", "triangle_break_per_step"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.attachment not in ATTACHMENTS:
            raise ConfigError(f"attachment must be one of {ATTACHMENTS}")
        if self.triangle_mode not in TRIANGLE_MODES:
            raise ConfigError(f"triangle_mode must be one of {TRIANGLE_MODES}")
        if self.initial_degree < 1:
            raise ConfigError("initial_degree must be at least 1")
        month_ordinal(self.start)

    @classmethod
    def from_dict(cls, data: dict) -> "SynthConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class StepTruth:
    from_index: int
    to_index: int
    born_nodes: list = field(default_factory=list)
    dead_nodes: list = field(default_factory=list)
    born_edges: dict = field(default_factory=lambda: {"inner": [], "boundary": [], "outer": []})
    dead_edges: dict = field(default_factory=lambda: {"inner": [], "boundary": [], "outer": []})
    closures: list = field(default_factory=list)
    breaks: list = field(default_factory=list)
    shortfalls: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def edges(d):
            return {k: [list(e) for e in sorted(v)] for k, v in d.items()}

        return {
            "from_index": self.from_index,
            "to_index": self.to_index,
            "born_nodes": sorted(self.born_nodes),
            "dead_nodes": sorted(self.dead_nodes),
            "born_edges": edges(self.born_edges),
            "dead_edges": edges(self.dead_edges),
            "closures": [list(t) for t in self.closures],
            "breaks": [list(t) for t in self.breaks],
            "shortfalls": dict(sorted(self.shortfalls.items())),
        }


@dataclass
class SynthTruth:
    config: SynthConfig
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"config": asdict(self.config), "steps": [s.to_dict() for s in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


class _Graph:
    """Mutable adjacency used while generating."""

    def __init__(self):
        self.adj: dict[int, set[int]] = {}

    def add_node(self, u):
        self.adj.setdefault(u, set())

    def add_edge(self, u, v):
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove_edge(self, u, v):
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def remove_node(self, u):
        for v in self.adj.pop(u):
            self.adj[v].discard(u)

    def degree(self, u):
        return len(self.adj[u])

    def edges(self):
        return {Edge(u, v) for u, vs in self.adj.items() for v in vs if u < v}

    def freeze(self, index, timestamp) -> Snapshot:
        return Snapshot(frozenset(self.adj), frozenset(self.edges()), index, timestamp)


class _Generator:
    def __init__(self, config: SynthConfig):
        self.cfg = config
        self.rng = np.random.Generator(np.random.PCG64(config.seed))
        self.g = _Graph()
        self.next_id = 1

    # -- random helpers (always over sorted candidates) --

    def _pick(self, candidates):
        return candidates[int(self.rng.integers(len(candidates)))]

    def _targets(self, pool, k):
        """``k`` distinct targets from the sorted ``pool`` by the attachment rule."""
        k = min(k, len(pool))
        if k == 0:
            return []
        if self.cfg.attachment == "uniform":
            idx = self.rng.choice(len(pool), size=k, replace=False)
        else:
            w = np.array([self.g.degree(u) + 1.0 for u in pool])
            idx = self.rng.choice(len(pool), size=k, replace=False, p=w / w.sum())
        return sorted(pool[int(i)] for i in idx)

    def _new_id(self):
        u = self.next_id
        self.next_id += 1
        return u

    # -- phases --

    def seed_graph(self):
        """Connected start graph: a triangle grown by attachment."""
        for _ in range(3):
            self.g.add_node(self._new_id())
        self.g.add_edge(1, 2)
        self.g.add_edge(2, 3)
        self.g.add_edge(1, 3)
        while len(self.g.adj) < self.cfg.n0:
            pool = sorted(self.g.adj)
            targets = self._targets(pool, self.cfg.initial_degree)
            u = self._new_id()
            self.g.add_node(u)
            for v in targets:
                self.g.add_edge(u, v)

    def step(self, truth: StepTruth):
        cfg, g = self.cfg, self.g
        n_start = len(g.adj)
        touched: set[Edge] = set()

        n_dead = math.floor(cfg.node_death_rate * n_start)
        n_born = math.floor(cfg.node_birth_rate * n_start)
        dead = sorted(g.adj, key=lambda u: (g.degree(u), u))[:n_dead]
        dead_set = set(dead)
        for u in dead:
            for v in g.adj[u]:
                e = Edge.of(u, v)
                if e in touched:
                    continue
                touched.add(e)
                cls = "outer" if v in dead_set else "boundary"
                truth.dead_edges[cls].append(e)
        for u in dead:
            g.remove_node(u)
        truth.dead_nodes = sorted(dead)

        survivors = sorted(g.adj)
        for _ in range(n_born):
            k = int(self.rng.integers(1, 4))
            # ids only grow, so survivors + truth.born_nodes stays sorted
            targets = self._targets(survivors + truth.born_nodes, k)
            u = self._new_id()
            g.add_node(u)
            for v in targets:
                g.add_edge(u, v)
                e = Edge.of(u, v)
                touched.add(e)
                cls = "outer" if v in truth.born_nodes else "boundary"
                truth.born_edges[cls].append(e)
            truth.born_nodes.append(u)

        self._rewire(survivors, touched, truth)
        if cfg.triangle_mode == "edge":
            self._close_wedges(survivors, touched, truth)
            self._break_edges(survivors, touched, truth)
        else:
            used: set[int] = set()
            self._plant_triangles(survivors, touched, truth, used)
            self._remove_triangles(survivors, touched, truth, used)

    def _attempts(self, wanted):
        return 50 * wanted + 100

    def _rewire(self, survivors, touched, truth):
        wanted = self.cfg.inner_rewire_per_step
        if not wanted:
            return
        g = self.g
        alive = set(survivors)
        removable = sorted(
            e for e in g.edges() if e.lo in alive and e.hi in alive and e not in touched
        )
        done = 0
        for _ in range(self._attempts(wanted)):
            if done == wanted or not removable:
                break
            old = removable.pop(int(self.rng.integers(len(removable))))
            u, v = self._pick(survivors), self._pick(survivors)
            if u == v or g.has_edge(u, v) or Edge.of(u, v) in touched:
                removable.append(old)
                removable.sort()
                continue
            new = Edge.of(u, v)
            g.remove_edge(*old)
            g.add_edge(*new)
            touched.update((old, new))
            truth.dead_edges["inner"].append(old)
            truth.born_edges["inner"].append(new)
            done += 1
        if done < wanted:
            truth.shortfalls["inner_rewire"] = wanted - done

    def _close_wedges(self, survivors, touched, truth):
        wanted = self.cfg.triangle_close_per_step
        if not wanted:
            return
        g = self.g
        alive = set(survivors)
        centres = [u for u in survivors if g.degree(u) >= 2]
        done = 0
        for _ in range(self._attempts(wanted)):
            if done == wanted or not centres:
                break
            c = self._pick(centres)
            nbrs = sorted(v for v in g.adj[c] if v in alive)
            if len(nbrs) < 2:
                continue
            x, y = self._pick(nbrs), self._pick(nbrs)
            e = Edge.of(x, y) if x != y else None
            if e is None or g.has_edge(x, y) or e in touched:
                continue
            g.add_edge(x, y)
            touched.add(e)
            truth.born_edges["inner"].append(e)
            truth.closures.append(tuple(sorted((x, y, c))))
            done += 1
        if done < wanted:
            truth.shortfalls["triangle_close"] = wanted - done

    def _break_edges(self, survivors, touched, truth):
        wanted = self.cfg.triangle_break_per_step
        if not wanted:
            return
        g = self.g
        alive = set(survivors)
        done = 0
        for _ in range(self._attempts(wanted)):
            if done == wanted:
                break
            candidates = sorted(
                e for e in g.edges()
                if e.lo in alive and e.hi in alive and e not in touched
                and any(w in alive for w in g.adj[e.lo] & g.adj[e.hi])
            )
            if not candidates:
                break
            e = self._pick(candidates)
            w = min(w for w in g.adj[e.lo] & g.adj[e.hi] if w in alive)
            g.remove_edge(*e)
            touched.add(e)
            truth.dead_edges["inner"].append(e)
            truth.breaks.append(tuple(sorted((e.lo, e.hi, w))))
            done += 1
        if done < wanted:
            truth.shortfalls["triangle_break"] = wanted - done

    def _plant_triangles(self, survivors, touched, truth, used):
        """Add node-disjoint triangles made entirely of new edges."""
        wanted = self.cfg.triangle_close_per_step
        if not wanted:
            return
        g = self.g
        done = 0
        for _ in range(self._attempts(wanted)):
            if done == wanted:
                break
            pool = [u for u in survivors if u not in used]
            if len(pool) < 3:
                break
            idx = sorted(int(i) for i in self.rng.choice(len(pool), size=3, replace=False))
            a, b, c = (pool[i] for i in idx)
            new = [Edge.of(a, b), Edge.of(a, c), Edge.of(b, c)]
            if any(g.has_edge(*e) or e in touched for e in new):
                continue
            for e in new:
                g.add_edge(*e)
            touched.update(new)
            used.update((a, b, c))
            truth.born_edges["inner"].extend(new)
            truth.closures.append((a, b, c))
            done += 1
        if done < wanted:
            truth.shortfalls["triangle_close"] = wanted - done

    def _remove_triangles(self, survivors, touched, truth, used):
        """Remove all three edges of node-disjoint existing triangles."""
        wanted = self.cfg.triangle_break_per_step
        if not wanted:
            return
        g = self.g
        alive = set(survivors)
        done = 0
        for _ in range(self._attempts(wanted)):
            if done == wanted:
                break
            tris = sorted(
                (a, b, c)
                for a in survivors if a not in used
                for b in g.adj[a] if b > a and b in alive and b not in used
                for c in g.adj[a] & g.adj[b] if c > b and c in alive and c not in used
            )
            tris = [
                t for t in tris
                if not {Edge.of(t[0], t[1]), Edge.of(t[0], t[2]), Edge.of(t[1], t[2])} & touched
            ]
            if not tris:
                break
            a, b, c = self._pick(tris)
            gone = [Edge.of(a, b), Edge.of(a, c), Edge.of(b, c)]
            for e in gone:
                g.remove_edge(*e)
            touched.update(gone)
            used.update((a, b, c))
            truth.dead_edges["inner"].extend(gone)
            truth.breaks.append((a, b, c))
            done += 1
        if done < wanted:
            truth.shortfalls["triangle_break"] = wanted - done


def generate(config: SynthConfig) -> tuple[SnapshotSeries, SynthTruth]:
    """Generate ``config.steps + 1`` monthly snapshots indexed from 1."""
    gen = _Generator(config)
    gen.seed_graph()
    start = month_ordinal(config.start)
    snaps = [gen.g.freeze(1, month_label(start))]
    truth = SynthTruth(config)
    for t in range(1, config.steps + 1):
        st = StepTruth(t, t + 1)
        gen.step(st)
        truth.steps.append(st)
        snaps.append(gen.g.freeze(t + 1, month_label(start + t)))
    return SnapshotSeries(tuple(snaps), window=1), truth
