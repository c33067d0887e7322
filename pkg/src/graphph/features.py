"""Nine structural descriptors per graph, used as the non-topological baseline."""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import ValidationError
from .graph import Graph, GraphDataset, connected_components
from .metric import shortest_path_matrix

CSV_HEADER = [
    "graph_id", "label", "density", "diameter", "clustering", "spectral_gap",
    "assortativity", "cliques", "components", "motif3_open", "motif3_closed",
]


@dataclass(frozen=True)
class FeatureVector:
    density: float
    diameter: float
    clustering_coefficient: float
    spectral_gap: float
    assortativity: float
    clique_number: int
    component_count: int
    motif3_open: float
    motif3_closed: float

    def as_list(self) -> list:
        return list(astuple(self))


def triangle_count(g: Graph) -> int:
    nbrs = [set(a) for a in g.neighbors]
    return sum(len(nbrs[i] & nbrs[j]) for i, j in g.edges) // 3


def open_triad_count(g: Graph) -> int:
    """Connected three-node subgraphs that are paths (not triangles)."""
    deg = g.degrees()
    wedges = int(np.sum(deg * (deg - 1) // 2))
    return wedges - 3 * triangle_count(g)


def average_clustering(g: Graph) -> float:
    if g.num_nodes == 0:
        return 0.0
    nbrs = [set(a) for a in g.neighbors]
    total = 0.0
    for v in range(g.num_nodes):
        k = len(nbrs[v])
        if k < 2:
            continue
        links = sum(len(nbrs[u] & nbrs[v]) for u in nbrs[v]) / 2
        total += 2.0 * links / (k * (k - 1))
    return total / g.num_nodes


def degree_assortativity(g: Graph) -> float:
    """Pearson correlation of degrees at the two ends of an edge; 0 when undefined."""
    if g.num_edges == 0:
        return 0.0
    deg = g.degrees().astype(float)
    e = np.array(g.sorted_edges)
    x = np.concatenate([deg[e[:, 0]], deg[e[:, 1]]])
    y = np.concatenate([deg[e[:, 1]], deg[e[:, 0]]])
    sx = x.std()
    if sx < 1e-12:
        return 0.0
    r = float(np.mean((x - x.mean()) * (y - y.mean())) / (sx * y.std()))
    return min(1.0, max(-1.0, r))


def spectral_gap(g: Graph) -> float:
    """Largest minus second-largest adjacency eigenvalue."""
    if g.num_nodes < 2:
        return 0.0
    w = np.linalg.eigvalsh(g.adjacency_matrix())
    return float(w[-1] - w[-2])


def diameter(g: Graph) -> float:
    """Largest finite shortest-path distance, i.e. the max over components."""
    if g.num_nodes == 0:
        return 0.0
    return shortest_path_matrix(g).max_finite


def degeneracy_order(g: Graph) -> list[int]:
    deg = [len(a) for a in g.neighbors]
    removed = [False] * g.num_nodes
    order = []
    for _ in range(g.num_nodes):
        v = min((x for x in range(g.num_nodes) if not removed[x]), key=lambda x: (deg[x], x))
        order.append(v)
        removed[v] = True
        for u in g.neighbors[v]:
            if not removed[u]:
                deg[u] -= 1
    return order


def clique_number(g: Graph) -> int:
    """Size of a maximum clique by branch and bound.

    Vertices are processed in degeneracy order; each one is expanded only into
    its later neighbours, and a branch is cut when the candidate set cannot
    beat the best clique found so far.
    """
    if g.num_nodes == 0:
        return 0
    nbrs = [set(a) for a in g.neighbors]
    order = degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    best = 1

    def expand(size: int, cand: set[int]) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        for v in sorted(cand, key=lambda x: pos[x]):
            if size + len(cand) <= best:
                return
            expand(size + 1, cand & nbrs[v])
            cand = cand - {v}

    for v in order:
        later = {u for u in nbrs[v] if pos[u] > pos[v]}
        if 1 + len(later) > best:
            expand(1, later)
    return best


def compute_features(g: Graph) -> FeatureVector:
    n = g.num_nodes
    if n < 1:
        raise ValidationError("features need at least one node")
    density = 2.0 * g.num_edges / (n * (n - 1)) if n >= 2 else 0.0
    triples = n * (n - 1) * (n - 2) / 6
    tri = triangle_count(g)
    open_ = open_triad_count(g)
    return FeatureVector(
        density=density,
        diameter=diameter(g),
        clustering_coefficient=average_clustering(g),
        spectral_gap=spectral_gap(g),
        assortativity=degree_assortativity(g),
        clique_number=clique_number(g),
        component_count=len(connected_components(g)),
        motif3_open=open_ / triples if triples else 0.0,
        motif3_closed=tri / triples if triples else 0.0,
    )


def feature_matrix(ds: GraphDataset) -> np.ndarray:
    """One row of the nine features per graph, in dataset order."""
    rows = [compute_features(g).as_list() for g in ds.graphs]
    return np.array(rows, dtype=float).reshape(len(rows), len(fields(FeatureVector)))

