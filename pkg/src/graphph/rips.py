"""Vietoris-Rips flag filtration up to triangles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ValidationError
from .metric import DistanceMatrix


class Simplex(NamedTuple):
    value: float
    dim: int
    vertices: tuple[int, ...]

    @property
    def sort_key(self):
        return (self.value, self.dim, self.vertices)


@dataclass(frozen=True)
class Filtration:
    """Simplices in filtration order together with the threshold used to build them.

    The order must be non-decreasing in ``(value, dim)``; ``build_flag_filtration``
    additionally breaks ties lexicographically on the vertex tuple.
    """

    simplices: tuple[Simplex, ...]
    threshold: float
    max_dim: int
    num_vertices: int

    def __post_init__(self):
        if self.max_dim not in (1, 2):
            raise ValidationError(f"max_dim must be 1 or 2, got {self.max_dim}")
        prev = (-math.inf, -1)
        for s in self.simplices:
            if (s.value, s.dim) < prev:
                raise ValidationError(f"simplex {s} is out of filtration order")
            if s.value > self.threshold:
                raise ValidationError(f"simplex {s} exceeds threshold {self.threshold}")
            prev = (s.value, s.dim)

    def of_dim(self, dim: int) -> list[Simplex]:
        return [s for s in self.simplices if s.dim == dim]


def build_flag_filtration(dm: DistanceMatrix, max_dim: int = 2, threshold: float = 1.0) -> Filtration:
    """Flag complex of ``dm`` truncated at ``max_dim``.

    Vertices enter at 0, an edge ``{i, j}`` at ``d(i, j)`` when that is at most
    ``threshold``, and a triangle at the largest of its edge values once all
    three edges are present.
    """
    if not threshold > 0:
        raise ValidationError(f"threshold must be positive, got {threshold}")
    if max_dim not in (1, 2):
        raise ValidationError(f"max_dim must be 1 or 2, got {max_dim}")
    d = dm.entries
    n = dm.size
    simplices = [Simplex(0.0, 0, (i,)) for i in range(n)]

    present = np.isfinite(d) & (d <= threshold)
    np.fill_diagonal(present, False)
    iu, ju = np.nonzero(np.triu(present, 1))
    simplices.extend(Simplex(float(d[i, j]), 1, (int(i), int(j))) for i, j in zip(iu, ju))

    if max_dim == 2:
        upper = np.triu(present, 1)
        for i in range(n):
            for j in np.flatnonzero(upper[i]):
                ks = np.flatnonzero(upper[i] & upper[j])
                if ks.size == 0:
                    continue
                vals = np.maximum(np.maximum(d[i, j], d[i, ks]), d[j, ks])
                simplices.extend(
                    Simplex(float(v), 2, (i, int(j), int(k))) for k, v in zip(ks, vals)
                )
    simplices.sort()
    return Filtration(tuple(simplices), float(threshold), max_dim, n)


def threshold_grid(steps: int) -> np.ndarray:
    """``steps`` evenly spaced scale values from 0 to 1 inclusive."""
    if steps < 2:
        raise ValidationError(f"steps must be >= 2, got {steps}")
    # i / (steps - 1) keeps exact rationals such as 0.5 exact
    return np.arange(steps) / (steps - 1)


def complex_at(f: Filtration, t: float) -> tuple[int, int, int]:
    """Number of vertices, edges and triangles with value <= t."""
    counts = [0, 0, 0]
    for s in f.simplices:
        if s.value <= t:
            counts[s.dim] += 1
    return counts[0], counts[1], counts[2]


def reorder_ties(f: Filtration, keys: Sequence[float]) -> Filtration:
    """Permute simplices inside blocks of equal ``(value, dim)`` by ``keys``.

    Any such permutation is still a valid filtration; used to check that
    diagrams do not depend on tie-breaking.
    """
    order = sorted(range(len(f.simplices)), key=lambda i: (f.simplices[i].value, f.simplices[i].dim, keys[i]))
    return Filtration(tuple(f.simplices[i] for i in order), f.threshold, f.max_dim, f.num_vertices)
