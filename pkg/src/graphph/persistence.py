"""Persistence diagrams in dimensions 0 and 1."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ValidationError
from .rips import Filtration

INF = math.inf


class UnionFind:
    """Disjoint sets whose representative is always the smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of ``(birth, death)`` pairs for one homological dimension.

    Points are kept sorted so that equal multisets compare equal. ``cap`` is
    the filtration threshold the diagram was computed at; ``clamp`` replaces
    infinite deaths by it.
    """

    dim: int
    points: tuple[tuple[float, float], ...] = ()
    cap: float = INF

    def __post_init__(self):
        pts = tuple(sorted((float(b), float(d)) for b, d in self.points))
        for b, d in pts:
            if math.isnan(b) or math.isnan(d) or not math.isfinite(b) or d < b:
                raise ValidationError(f"invalid persistence point {(b, d)}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)

    @property
    def has_infinite(self) -> bool:
        return any(math.isinf(d) for _, d in self.points)

    def essential_count(self) -> int:
        return sum(1 for _, d in self.points if math.isinf(d))

    def to_records(self) -> list[dict]:
        return [
            {"dim": self.dim, "birth": b, "death": "inf" if math.isinf(d) else d}
            for b, d in self.points
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())


def diagram_from_records(records: Iterable[dict], cap: float = INF, dim: Optional[int] = None) -> PersistenceDiagram:
    """Inverse of ``PersistenceDiagram.to_records``; ``death == "inf"`` means essential."""
    pts = []
    for r in records:
        rec_dim = r.get("dim")
        if rec_dim is not None:
            if dim is None:
                dim = int(rec_dim)
            elif int(rec_dim) != dim:
                raise ValidationError("records mix homological dimensions")
        death = r["death"]
        pts.append((float(r["birth"]), INF if death == "inf" else float(death)))
    return PersistenceDiagram(dim if dim is not None else 0, tuple(pts), cap)


def persistence_h0(f: Filtration) -> PersistenceDiagram:
    """Connected-component diagram via union-find over edges in filtration order.

    Every vertex is born at 0, so each merge kills one class at the edge value;
    the component keeps its smallest vertex as representative.
    """
    uf = UnionFind(f.num_vertices)
    pts = []
    for s in f.simplices:
        if s.dim == 1 and uf.union(*s.vertices):
            pts.append((0.0, s.value))
    roots = {uf.find(v) for v in range(f.num_vertices)}
    pts.extend((0.0, INF) for _ in roots)
    return PersistenceDiagram(0, tuple(pts), f.threshold)


def persistence_h1(f: Filtration) -> PersistenceDiagram:
    """Loop diagram by column reduction of the triangle boundary matrix over Z/2.

    Edge columns are never reduced: an edge joining two components is an H0
    death (found by union-find) and so cannot start a loop, and every other
    edge is a cycle whose column would reduce to zero. Triangle columns are
    stored as integer bitsets over edge positions so that column addition is
    a single XOR. Positive edges left unpaired at the end are essential.
    """
    if f.max_dim < 2:
        raise ValidationError("H1 needs triangles; build the filtration with max_dim=2")
    edge_pos: dict[tuple[int, ...], int] = {}
    edge_val: list[float] = []
    positive: list[bool] = []
    uf = UnionFind(f.num_vertices)
    pivots: dict[int, int] = {}
    pts = []
    for s in f.simplices:
        if s.dim == 1:
            edge_pos[s.vertices] = len(edge_val)
            edge_val.append(s.value)
            positive.append(not uf.union(*s.vertices))
        elif s.dim == 2:
            a, b, c = s.vertices
            col = (1 << edge_pos[(a, b)]) | (1 << edge_pos[(a, c)]) | (1 << edge_pos[(b, c)])
            while col:
                low = col.bit_length() - 1
                other = pivots.get(low)
                if other is None:
                    pivots[low] = col
                    if edge_val[low] < s.value:
                        pts.append((edge_val[low], s.value))
                    break
                col ^= other
    for e, pos in enumerate(positive):
        if pos and e not in pivots:
            pts.append((edge_val[e], INF))
    return PersistenceDiagram(1, tuple(pts), f.threshold)


def diagrams(f: Filtration, dims: Iterable[int] = (0, 1)) -> dict[int, PersistenceDiagram]:
    out = {}
    for dim in dims:
        if dim == 0:
            out[0] = persistence_h0(f)
        elif dim == 1:
            out[1] = persistence_h1(f)
        else:
            raise ValidationError(f"unsupported homological dimension {dim}")
    return out


def betti_from_diagram(pd: PersistenceDiagram, t: float) -> int:
    """Number of classes alive at ``t``, i.e. with ``birth <= t < death``."""
    return sum(1 for b, d in pd.points if b <= t < d)
