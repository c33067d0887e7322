"""Wasserstein and bottleneck distances between persistence diagrams.

Each diagram is augmented with the diagonal: a point may be matched to a
point of the other diagram or to its own orthogonal projection onto the
diagonal, and projections match each other at no cost.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import ValidationError
from .persistence import PersistenceDiagram

Point = tuple[float, float]
METRICS = ("w1", "w2", "bottleneck")


class MatchedPair(NamedTuple):
    source: Point
    target: Point
    source_diagonal: bool
    target_diagonal: bool
    cost: float


@dataclass(frozen=True)
class Matching:
    pairs: tuple[MatchedPair, ...]
    cost: float
    q: float


def _projection(p: Point) -> Point:
    m = (p[0] + p[1]) / 2.0
    return (m, m)


def _check(pd1: PersistenceDiagram, pd2: PersistenceDiagram) -> tuple[np.ndarray, np.ndarray]:
    if pd1.dim != pd2.dim:
        raise ValidationError(f"cannot compare diagrams of dimensions {pd1.dim} and {pd2.dim}")
    if pd1.has_infinite or pd2.has_infinite:
        raise ValidationError("diagrams with infinite deaths must be clamped first")
    return pd1.as_array(), pd2.as_array()


def _ground_costs(a: np.ndarray, b: np.ndarray):
    """L-infinity point distances plus each point's distance to the diagonal."""
    cross = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2) if a.size and b.size else np.zeros((len(a), len(b)))
    diag_a = (a[:, 1] - a[:, 0]) / 2.0 if a.size else np.zeros(0)
    diag_b = (b[:, 1] - b[:, 0]) / 2.0 if b.size else np.zeros(0)
    return cross, diag_a, diag_b


def _pairs_from_assignment(a, b, cross, diag_a, diag_b, rows, cols) -> list[MatchedPair]:
    n1, n2 = len(a), len(b)
    pairs = []
    for r, c in zip(rows, cols):
        if r < n1 and c < n2:
            pairs.append(MatchedPair(tuple(a[r]), tuple(b[c]), False, False, float(cross[r, c])))
        elif r < n1:
            u = tuple(a[r])
            pairs.append(MatchedPair(u, _projection(u), False, True, float(diag_a[r])))
        elif c < n2:
            v = tuple(b[c])
            pairs.append(MatchedPair(_projection(v), v, True, False, float(diag_b[c])))
    return pairs


def wasserstein(pd1: PersistenceDiagram, pd2: PersistenceDiagram, q: float = 1.0) -> tuple[float, Matching]:
    """q-Wasserstein distance with L-infinity ground cost and its optimal matching.

    Solved as a square assignment problem of size ``n1 + n2``: rows are the
    points of ``pd1`` followed by diagonal slots for ``pd2``, columns the points
    of ``pd2`` followed by diagonal slots for ``pd1``. Diagonal slots are
    interchangeable, so a point pays its own diagonal distance for any slot.
    ``q = inf`` gives the bottleneck distance.
    """
    if math.isinf(q):
        return bottleneck(pd1, pd2)
    if not q >= 1:
        raise ValidationError(f"q must be >= 1, got {q}")
    a, b = _check(pd1, pd2)
    n1, n2 = len(a), len(b)
    if n1 + n2 == 0:
        return 0.0, Matching((), 0.0, q)
    cross, diag_a, diag_b = _ground_costs(a, b)
    cost = np.zeros((n1 + n2, n1 + n2))
    cost[:n1, :n2] = cross**q
    cost[:n1, n2:] = (diag_a**q)[:, None]
    cost[n1:, :n2] = (diag_b**q)[None, :]
    rows, cols = linear_sum_assignment(cost)
    total = float(cost[rows, cols].sum())
    dist = total ** (1.0 / q)
    pairs = _pairs_from_assignment(a, b, cross, diag_a, diag_b, rows, cols)
    return dist, Matching(tuple(pairs), dist, q)


def _perfect_matching(a_ok: np.ndarray, da_ok: np.ndarray, db_ok: np.ndarray):
    """Perfect matching of the augmented bipartite graph, or None.

    Point ``i`` of the first diagram may use only diagonal slot ``n2 + i`` and
    point ``j`` of the second only row ``n1 + j``; every diagonal row may take
    every diagonal column.
    """
    n1, n2 = a_ok.shape
    size = n1 + n2
    adj = np.zeros((size, size), dtype=bool)
    adj[:n1, :n2] = a_ok
    adj[np.arange(n1), n2 + np.arange(n1)] = da_ok
    adj[n1 + np.arange(n2), np.arange(n2)] = db_ok
    adj[n1:, n2:] = True
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    if np.any(match < 0):
        return None
    return match


def bottleneck(pd1: PersistenceDiagram, pd2: PersistenceDiagram) -> tuple[float, Matching]:
    """Bottleneck distance: smallest ``delta`` admitting a perfect matching with all costs <= delta.

    Binary search over the sorted distinct candidate costs, testing each with
    Hopcroft-Karp on the augmented bipartite graph.
    """
    a, b = _check(pd1, pd2)
    n1, n2 = len(a), len(b)
    if n1 + n2 == 0:
        return 0.0, Matching((), 0.0, math.inf)
    cross, diag_a, diag_b = _ground_costs(a, b)
    candidates = np.unique(np.concatenate([[0.0], cross.ravel(), diag_a, diag_b]))
    lo, hi = 0, len(candidates) - 1
    best = _perfect_matching(cross <= candidates[hi], diag_a <= candidates[hi], diag_b <= candidates[hi])
    while lo < hi:
        mid = (lo + hi) // 2
        delta = candidates[mid]
        m = _perfect_matching(cross <= delta, diag_a <= delta, diag_b <= delta)
        if m is None:
            lo = mid + 1
        else:
            hi, best = mid, m
    dist = float(candidates[lo])
    pairs = _pairs_from_assignment(a, b, cross, diag_a, diag_b, np.arange(n1 + n2), best)
    return dist, Matching(tuple(pairs), dist, math.inf)


def brute_force_wasserstein(pd1: PersistenceDiagram, pd2: PersistenceDiagram, q: float = 1.0) -> float:
    """Exhaustive minimum over all partial matchings; for testing on tiny diagrams.

    Each point of ``pd1`` either takes an unused point of ``pd2`` or goes to the
    diagonal; leftover points of ``pd2`` go to the diagonal. This enumerates
    every bijection of the augmented diagrams up to permuting diagonal copies.
    """
    a, b = _check(pd1, pd2)
    if len(a) + len(b) > 8:
        raise ValidationError("brute force is limited to 8 points in total")
    a_pts = [tuple(p) for p in a]
    b_pts = [tuple(p) for p in b]

    def linf(u, v):
        return max(abs(u[0] - v[0]), abs(u[1] - v[1]))

    def to_diag(u):
        return (u[1] - u[0]) / 2.0

    bottleneck_mode = math.isinf(q)
    best = math.inf

    def combine(acc, c):
        return max(acc, c) if bottleneck_mode else acc + c**q

    def search(i, used, acc):
        nonlocal best
        if i == len(a_pts):
            for j, v in enumerate(b_pts):
                if not used >> j & 1:
                    acc = combine(acc, to_diag(v))
            best = min(best, acc)
            return
        u = a_pts[i]
        search(i + 1, used, combine(acc, to_diag(u)))
        for j, v in enumerate(b_pts):
            if not used >> j & 1:
                search(i + 1, used | 1 << j, combine(acc, linf(u, v)))

    search(0, 0, 0.0)
    return best if bottleneck_mode else best ** (1.0 / q)


def diagram_distance(pd1: PersistenceDiagram, pd2: PersistenceDiagram, metric: str | float = "w1") -> float:
    """``metric`` is ``"w1"``, ``"w2"``, ``"bottleneck"`` or a numeric Wasserstein order."""
    if metric == "bottleneck":
        return bottleneck(pd1, pd2)[0]
    if metric in ("w1", "w2"):
        metric = float(metric[1])
    if isinstance(metric, (int, float)):
        return wasserstein(pd1, pd2, float(metric))[0]
    raise ValidationError(f"metric must be one of {METRICS} or a number, got {metric!r}")


def pairwise_distance_matrix(diagrams: Sequence[PersistenceDiagram], metric: str | float = "w1") -> np.ndarray:
    """Symmetric matrix of diagram distances with zero diagonal."""
    n = len(diagrams)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = diagram_distance(diagrams[i], diagrams[j], metric)
    return out
