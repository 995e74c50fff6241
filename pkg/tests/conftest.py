"""Shared random-graph factories and independent oracles for the test suite."""

import itertools
from pathlib import Path

import numpy as np
import pytest
from scipy.special import zeta

from netmeta.graph import Snapshot, build_snapshot

FIXTURES = Path(__file__).parent / "fixtures"


def random_snapshot(rng, n_nodes, p, index=0, ids=None):
    """G(n, p) on ``ids`` (default 0..n-1); isolated nodes are kept."""
    ids = list(range(n_nodes)) if ids is None else list(ids)
    pairs = [(u, v) for u, v in itertools.combinations(ids, 2) if rng.random() < p]
    return build_snapshot(pairs, ids, index=index)


def random_pair(rng, max_nodes=100):
    """Two snapshots over overlapping id ranges, so all node classes occur."""
    universe = int(rng.integers(3, max_nodes + 1))
    ids = np.arange(universe)
    keep_i = ids[rng.random(universe) < 0.8]
    keep_j = ids[rng.random(universe) < 0.8]
    p = float(rng.uniform(0.02, 0.3))
    g_i = random_snapshot(rng, 0, p, index=1, ids=keep_i.tolist())
    # correlate E(j) with E(i) so inner edges are a mix of kept and changed
    pairs = [
        (u, v) for u, v in itertools.combinations(keep_j.tolist(), 2)
        if ((u, v) in g_i.edges and rng.random() < 0.7) or rng.random() < p / 3
    ]
    g_j = build_snapshot(pairs, keep_j.tolist(), index=2)
    return g_i, g_j


def eq1_oracle(g_i: Snapshot, g_j: Snapshot) -> dict:
    """The six edge classes evaluated literally from the set-builder definitions.

    Either endpoint may play the left/right role, so both orientations are tried.
    """
    n_steady = {u for u in g_i.nodes if u in g_j.nodes}
    n_dead = {u for u in g_i.nodes if u not in g_j.nodes}
    n_born = {u for u in g_j.nodes if u not in g_i.nodes}

    def either(e, left, right):
        a, b = e
        return (a in left and b in right) or (b in left and a in right)

    gone = [e for e in g_i.edges if e not in g_j.edges]
    new = [e for e in g_j.edges if e not in g_i.edges]
    return {
        "dead_outer": {e for e in g_i.edges if either(e, n_dead, n_dead)},
        "dead_boundary": {e for e in g_i.edges if either(e, n_dead, n_steady)},
        "dead_inner": {e for e in gone if either(e, n_steady, n_steady)},
        "born_outer": {e for e in g_j.edges if either(e, n_born, n_born)},
        "born_boundary": {e for e in g_j.edges if either(e, n_born, n_steady)},
        "born_inner": {e for e in new if either(e, n_steady, n_steady)},
        "steady": n_steady,
        "dead": n_dead,
        "born": n_born,
    }


def relabel(g: Snapshot, mapping) -> Snapshot:
    return build_snapshot(
        [(mapping[e.lo], mapping[e.hi]) for e in g.edges],
        [mapping[u] for u in g.nodes],
        index=g.index,
        timestamp=g.timestamp,
    )


class DiscretePowerLaw:
    """Exact inverse-CDF sampler for P(k) = k^-gamma / zeta(gamma, kmin)."""

    def __init__(self, gamma, kmin=1, table=10**6):
        k = np.arange(kmin, kmin + table, dtype=float)
        pmf = k ** -gamma / zeta(gamma, kmin)
        self.cdf = np.cumsum(pmf)
        self.gamma = gamma
        self.kmin = kmin

    def sample(self, rng, n):
        u = rng.random(n)
        out = np.searchsorted(self.cdf, u).astype(np.int64) + self.kmin
        beyond = u > self.cdf[-1]
        if beyond.any():
            # continuous tail beyond the table; probability ~ table^(1-gamma)
            top = self.kmin + len(self.cdf)
            v = rng.random(int(beyond.sum()))
            out[beyond] = np.floor(top * (1 - v) ** (-1 / (self.gamma - 1))).astype(np.int64)
        return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def triangle():
    return build_snapshot([(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def star():
    return build_snapshot([(0, 1), (0, 2), (0, 3)])


# lines recorded by test_acceptance.py, echoed at the end of the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
