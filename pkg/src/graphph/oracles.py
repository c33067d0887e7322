"""Slow reference computations used to freeze fixture values and cross-check tests.

Nothing here shares code with the fast paths in ``rips`` and ``persistence``.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def enumerate_flag_simplices(d: np.ndarray, threshold: float) -> list[tuple[float, int, tuple[int, ...]]]:
    """All vertices, edges and triangles of the flag complex by exhaustive enumeration."""
    n = d.shape[0]

    def ok(i, j):
        return math.isfinite(d[i, j]) and d[i, j] <= threshold

    out = [(0.0, 0, (i,)) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if ok(i, j):
            out.append((float(d[i, j]), 1, (i, j)))
    for i, j, k in itertools.combinations(range(n), 3):
        if ok(i, j) and ok(i, k) and ok(j, k):
            out.append((float(max(d[i, j], d[i, k], d[j, k])), 2, (i, j, k)))
    out.sort()
    return out


def naive_diagrams(d: np.ndarray, threshold: float) -> dict[int, list[tuple[float, float]]]:
    """H0 and H1 by the textbook left-to-right reduction of the full boundary matrix over Z/2.

    Zero-length H1 pairs are dropped; every H0 pair is kept.
    """
    simplices = enumerate_flag_simplices(d, threshold)
    index = {s[2]: k for k, s in enumerate(simplices)}
    m = len(simplices)
    cols = []
    for _, dim, verts in simplices:
        col = set()
        if dim > 0:
            for face in itertools.combinations(verts, dim):
                col.add(index[face])
        cols.append(col)
    low_of = {}
    paired = set()
    pairs = {0: [], 1: []}
    for j in range(m):
        col = cols[j]
        while col and max(col) in low_of:
            col = col ^ cols[low_of[max(col)]]
        cols[j] = col
        if col:
            i = max(col)
            low_of[i] = j
            paired.update((i, j))
            dim = simplices[i][1]
            if dim <= 1:
                pairs[dim].append((simplices[i][0], simplices[j][0]))
    for k, (value, dim, _) in enumerate(simplices):
        if k not in paired and dim <= 1 and not cols[k]:
            pairs[dim].append((value, math.inf))
    pairs[1] = [p for p in pairs[1] if p[0] < p[1]]
    return {dim: sorted(p) for dim, p in pairs.items()}


def gf2_rank(mat: np.ndarray) -> int:
    a = (np.array(mat, dtype=np.uint8) % 2).copy()
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def betti_numbers_at(d: np.ndarray, t: float) -> tuple[int, int, int]:
    """(b0, b1, b2) of the flag complex at scale ``t`` via GF(2) ranks (no 3-simplices)."""
    s = enumerate_flag_simplices(d, t)
    verts = [x[2] for x in s if x[1] == 0]
    edges = [x[2] for x in s if x[1] == 1]
    tris = [x[2] for x in s if x[1] == 2]
    vi = {v: k for k, v in enumerate(verts)}
    ei = {e: k for k, e in enumerate(edges)}
    d1 = np.zeros((len(verts), len(edges)), dtype=np.uint8)
    for k, (a, b) in enumerate(edges):
        d1[vi[(a,)], k] = d1[vi[(b,)], k] = 1
    d2 = np.zeros((len(edges), len(tris)), dtype=np.uint8)
    for k, (a, b, c) in enumerate(tris):
        for e in ((a, b), (a, c), (b, c)):
            d2[ei[e], k] = 1
    r1 = gf2_rank(d1) if d1.size else 0
    r2 = gf2_rank(d2) if d2.size else 0
    return len(verts) - r1, len(edges) - r1 - r2, len(tris) - r2
