"""Series-level statistics over a snapshot series.

Edge metabolism rate, exponential trend fits, power-law exponents of the
degree distribution, normalised degree entropy, per-node degree
trajectories and M3 mutation detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from .errors import EmptyGraph, EmptySnapshot, InsufficientPoints, NeverSeen, TailTooSmall
from .evolution import CLASSES, EvolutionDelta
from .graph import Snapshot, SnapshotSeries, degree_sequence

SCOPES = ("all",) + CLASSES
DEFAULT_THRESHOLD = 0.03


# -- metabolism rate ---------------------------------------------------------------


def born_dead_totals(delta: EvolutionDelta, scope: str = "all") -> tuple[int, int]:
    if scope == "all":
        return len(delta.born_edges), len(delta.dead_edges)
    if scope not in CLASSES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    return len(delta.edges("birth", scope)), len(delta.edges("death", scope))


def metabolism_terms(series: SnapshotSeries, deltas: Sequence[EvolutionDelta], scope: str = "all") -> list[float]:
    """Per-pair ``|born - dead| / |E(i)|``."""
    sizes = {g.index: len(g.edges) for g in series}
    terms = []
    for d in deltas:
        n_edges = sizes[d.from_index]
        if n_edges == 0:
            raise EmptySnapshot(f"snapshot {d.from_index} has no edges")
        born, dead = born_dead_totals(d, scope)
        terms.append(abs(born - dead) / n_edges)
    return terms


def metabolism_rate(series: SnapshotSeries, deltas: Sequence[EvolutionDelta], scope: str = "all") -> float:
    """Mean normalised net edge change over the consecutive pairs.

    r = 1/(n-1) * sum_i |E_born(i,i+1)| - |E_dead(i,i+1)| (absolute) / |E(i)|,
    with the born/dead totals restricted to ``scope``.
    """
    if len(deltas) == 0:
        raise InsufficientPoints("metabolism rate needs at least two snapshots")
    terms = metabolism_terms(series, deltas, scope)
    return math.fsum(terms) / len(terms)


# -- exponential trend ---------------------------------------------------------------


@dataclass(frozen=True)
class TrendFit:
    """``y = a * exp(b * x) + c`` with its residual sum of squares."""

    a: float
    b: float
    c: float
    sse: float
    x_min: float
    x_max: float
    degenerate: bool = False

    def __call__(self, x):
        return self.a * np.exp(self.b * np.asarray(x, dtype=float)) + self.c


def _linear_part(x, y, b):
    """Best (a, c) for fixed b, and the resulting SSE."""
    basis = np.exp(b * x)
    design = np.column_stack([basis, np.ones_like(x)])
    (a, c), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (a * basis + c)
    return float(a), float(c), float(resid @ resid)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, lo, hi, tol):
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return (lo + hi) / 2.0


def exp_trend_fit(x, y=None, tol: float = 1e-9, grid_size: int = 200) -> TrendFit:
    """Least-squares fit of ``y = a*exp(b*x) + c``.

    ``x`` may be a sequence of ``(x, y)`` points when ``y`` is omitted.
    The rate ``b`` is found by a one-dimensional search: a log-spaced grid
    of magnitudes on both signs, then golden-section refinement to ``tol``
    around the best grid point. For each candidate ``b`` the pair ``(a, c)``
    is the closed-form linear least-squares solution.

    A constant ``y`` returns the degenerate fit ``a = b = 0, c = mean(y)``.
    """
    if y is None:
        pts = np.asarray(x, dtype=float)
        x, y = pts[:, 0], pts[:, 1]
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d and the same length")
    if len(x) < 4:
        raise InsufficientPoints(f"need at least 4 points, got {len(x)}")
    if len(np.unique(x)) != len(x):
        raise InsufficientPoints("x values must be distinct")
    x_min, x_max = float(x.min()), float(x.max())
    if np.all(y == y[0]):
        return TrendFit(0.0, 0.0, float(y[0]), 0.0, x_min, x_max, degenerate=True)

    # Centre x so exp(b*x) stays well scaled; shifts only rescale a.
    shift = x_min
    xs = x - shift
    span = x_max - x_min
    mags = np.logspace(math.log10(1e-6 / span), math.log10(50.0 / span), grid_size)
    grid = np.concatenate([-mags[::-1], mags])
    sse = np.array([_linear_part(xs, y, b)[2] for b in grid])
    k = int(np.argmin(sse))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    b = float(_golden_min(lambda t: _linear_part(xs, y, t)[2], float(lo), float(hi), tol))
    a, c, err = _linear_part(xs, y, b)
    return TrendFit(a * math.exp(-b * shift), b, c, err, x_min, x_max)


# -- power law -------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLawFit:
    """Degree-distribution exponent.

    ``gamma`` is the exact discrete maximum-likelihood estimate (Hurwitz
    zeta normalisation). ``gamma_approx`` is the closed-form estimate
    ``1 + n / sum ln(k / (kmin - 0.5))`` and ``gamma_regression`` the
    exponent implied by a least-squares line through the log-log CCDF.
    """

    gamma: float
    kmin: int
    n_tail: int
    method: str
    gamma_approx: float
    gamma_regression: float


MIN_TAIL = 10


def _discrete_mle(tail: np.ndarray, kmin: int) -> float:
    n = len(tail)
    log_sum = float(np.log(tail).sum())

    def nll(a):
        return n * math.log(zeta(a, kmin)) + a * log_sum

    res = minimize_scalar(nll, bounds=(1.0 + 1e-6, 20.0), method="bounded", options={"xatol": 1e-10})
    return float(res.x)


def _ccdf_slope(tail: np.ndarray) -> float:
    values, counts = np.unique(tail, return_counts=True)
    ccdf = counts[::-1].cumsum()[::-1] / len(tail)
    if len(values) < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(values), np.log(ccdf), 1)
    return float(slope)


def powerlaw_fit(degrees, kmin="auto") -> PowerLawFit:
    """Fit ``P(k) ~ k^-gamma`` to degrees ``>= kmin``.

    ``degrees`` is a mapping node -> degree or a plain sequence. ``auto``
    picks the smallest positive degree.

    Raises
    ------
    TailTooSmall
        Fewer than 10 tail degrees, or all tail degrees equal.
    """
    values = np.fromiter(
        (int(k) for k in (degrees.values() if hasattr(degrees, "values") else degrees)),
        dtype=np.int64,
    )
    positive = values[values >= 1]
    if kmin == "auto":
        if positive.size == 0:
            raise TailTooSmall("no positive degrees")
        kmin = int(positive.min())
    kmin = int(kmin)
    if kmin < 1:
        raise ValueError("kmin must be positive")
    tail = positive[positive >= kmin].astype(float)
    if tail.size < MIN_TAIL:
        raise TailTooSmall(f"{tail.size} degrees >= {kmin}; need {MIN_TAIL}")
    if tail.max() == tail.min():
        raise TailTooSmall("all tail degrees are equal")
    approx = 1.0 + tail.size / float(np.log(tail / (kmin - 0.5)).sum())
    return PowerLawFit(
        gamma=_discrete_mle(tail, kmin),
        kmin=kmin,
        n_tail=int(tail.size),
        method="mle",
        gamma_approx=approx,
        gamma_regression=1.0 - _ccdf_slope(tail),
    )


# -- structure entropy -------------------------------------------------------------


def structure_entropy(g: Snapshot) -> float:
    """Shannon entropy of degree shares, divided by ln(number of non-isolated nodes).

    Degree shares are ``deg(u) / 2|E|``. The value is 1 exactly when every
    non-isolated node has the same degree.
    """
    if not g.edges:
        raise EmptyGraph("entropy needs at least one edge")
    degs = np.array([d for d in degree_sequence(g).values() if d > 0], dtype=float)
    if np.all(degs == degs[0]):
        return 1.0
    p = degs / degs.sum()
    h = -float(np.sum(p * np.log(p)))
    return min(1.0, h / math.log(len(degs)))


# -- node trajectories -------------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    node: int
    points: tuple  # (index, degree or None)
    first_seen: int
    last_seen: int


def node_trajectory(series: SnapshotSeries, node: int) -> Trajectory:
    points = tuple(
        (g.index, len(g.adjacency[node]) if node in g else None) for g in series
    )
    seen = [i for i, d in points if d is not None]
    if not seen:
        raise NeverSeen(node)
    return Trajectory(node, points, seen[0], seen[-1])


# -- mutations -------------------------------------------------------------------------------


@dataclass(frozen=True)
class MutationEvent:
    pair_from: int
    pair_to: int
    side: str
    rate: float
    threshold: float
    entropy_before: float | None
    entropy_after: float | None

    def to_dict(self) -> dict:
        return {
            "pair_from": self.pair_from,
            "pair_to": self.pair_to,
            "side": self.side,
            "rate": self.rate,
            "threshold": self.threshold,
            "entropy_before": self.entropy_before,
            "entropy_after": self.entropy_after,
        }


def detect_mutations(rates, threshold: float = DEFAULT_THRESHOLD, entropies=None) -> list[MutationEvent]:
    """Flag every (pair, side) whose M3 rate strictly exceeds ``threshold``.

    ``rates`` holds ``(pair_from, pair_to, birth_rate, death_rate)`` rows
    (``M3Rate`` or plain tuples); a pair may also be given as a single
    ``(from, to)`` tuple in the first position. Undefined (``None``/NaN)
    rates never fire. ``entropies`` maps snapshot index to structure entropy.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    entropies = entropies or {}
    events = []
    for row in rates:
        if len(row) == 3:
            (i, j), birth, death = row
        else:
            i, j, birth, death = row
        for side, rate in (("birth", birth), ("death", death)):
            if rate is None or math.isnan(rate) or not rate > threshold:
                continue
            events.append(MutationEvent(
                i, j, side, float(rate), threshold, entropies.get(i), entropies.get(j),
            ))
    return events
