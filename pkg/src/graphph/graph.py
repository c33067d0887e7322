"""Undirected graphs, TUDataset text ingestion and random edge deletion."""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FormatError, InputError, ValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0 .. num_nodes-1``.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``.
    """

    num_nodes: int
    edges: frozenset[Edge] = field(default_factory=frozenset)
    label: Optional[int] = None

    def __post_init__(self):
        if self.num_nodes < 0:
            raise ValidationError(f"num_nodes must be >= 0, got {self.num_nodes}")
        for i, j in self.edges:
            if not (0 <= i < j < self.num_nodes):
                raise ValidationError(f"edge {(i, j)} is not a canonical pair below {self.num_nodes}")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for i, j in self.sorted_edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.neighbors], dtype=np.int64)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.num_nodes, self.num_nodes))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the isomorphic graph with node ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.num_nodes)):
            raise ValidationError("perm is not a permutation of the node set")
        return graph_from_edge_list(
            self.num_nodes, [(perm[i], perm[j]) for i, j in self.edges], label=self.label
        )


@dataclass(frozen=True)
class GraphDataset:
    name: str
    graphs: tuple[Graph, ...]
    class_count: int

    def __post_init__(self):
        for g in self.graphs:
            if g.label is not None and not (0 <= g.label < self.class_count):
                raise ValidationError(f"label {g.label} outside [0, {self.class_count})")

    def __len__(self) -> int:
        return len(self.graphs)

    def map_graphs(self, fn) -> "GraphDataset":
        return GraphDataset(self.name, tuple(fn(g) for g in self.graphs), self.class_count)


def graph_from_edge_list(num_nodes: int, edges: Iterable[Sequence[int]], label: Optional[int] = None) -> Graph:
    """Build a graph, collapsing ``(i, j)`` and ``(j, i)`` into one edge.

    Raises ValidationError on self-loops or endpoints outside ``[0, num_nodes)``.
    """
    canon = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise ValidationError(f"self-loop at node {i}")
        if not (0 <= i < num_nodes and 0 <= j < num_nodes):
            raise ValidationError(f"edge {(i, j)} has an endpoint outside [0, {num_nodes})")
        canon.add((i, j) if i < j else (j, i))
    return Graph(num_nodes, frozenset(canon), label)


def connected_components(g: Graph) -> list[set[int]]:
    """Node sets of the connected components, ordered by smallest member."""
    seen = [False] * g.num_nodes
    comps = []
    for start in range(g.num_nodes):
        if seen[start]:
            continue
        seen[start] = True
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def delete_edges_random(g: Graph, fraction: float, seed: int) -> Graph:
    """Remove ``floor(fraction * |E|)`` edges chosen uniformly without replacement.

    The edges are put in sorted order and shuffled by a generator seeded with
    ``seed``; the first ``k`` of the permutation are dropped. Equal seeds give
    identical graphs.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValidationError(f"fraction must lie in [0, 1], got {fraction}")
    edges = g.sorted_edges
    # round() guards against products like 0.29 * 100 = 28.999999999999996
    k = math.floor(round(fraction * len(edges), 9))
    if k == 0:
        return g
    order = np.random.default_rng(seed).permutation(len(edges))
    keep = sorted(order[k:].tolist())
    return Graph(g.num_nodes, frozenset(edges[i] for i in keep), g.label)


# --------------------------------------------------------------------------
# TUDataset text format


def _read_int_lines(path: Path) -> list[list[int]]:
    if not path.is_file():
        raise InputError(f"missing file: {path}")
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([int(tok) for tok in line.split(",")])
            except ValueError:
                raise FormatError(f"{path.name}:{lineno}: non-integer token in {line!r}") from None
    return rows


def parse_tu_dataset(root_dir: str | os.PathLike, name: str) -> GraphDataset:
    """Read ``<name>_A.txt``, ``<name>_graph_indicator.txt`` and ``<name>_graph_labels.txt``.

    Node ids in ``_A.txt`` are global and 1-based; they are renumbered per graph
    starting at 0. Class labels are remapped to ``0 .. k-1`` in sorted order of
    the original values. Other TUDataset files (attributes, node labels) are
    not read.
    """
    root = Path(root_dir)
    adj_rows = _read_int_lines(root / f"{name}_A.txt")
    indicator_rows = _read_int_lines(root / f"{name}_graph_indicator.txt")
    label_rows = _read_int_lines(root / f"{name}_graph_labels.txt")

    for fname, rows, width in (
        ("graph_indicator", indicator_rows, 1),
        ("graph_labels", label_rows, 1),
        ("A", adj_rows, 2),
    ):
        for r in rows:
            if len(r) != width:
                raise FormatError(f"{name}_{fname}.txt: expected {width} value(s) per line, got {r}")

    indicator = [r[0] for r in indicator_rows]
    labels_raw = [r[0] for r in label_rows]
    n_graphs = len(labels_raw)

    # node id -> (graph index, local id); graphs must occupy contiguous blocks
    starts: dict[int, int] = {}
    counts = [0] * n_graphs
    prev = 0
    for node, gid in enumerate(indicator):
        if not 1 <= gid <= n_graphs:
            raise FormatError(f"graph id {gid} on indicator line {node + 1} outside [1, {n_graphs}]")
        if gid < prev or (gid != prev and gid in starts):
            raise FormatError(f"indicator block for graph {gid} is not contiguous")
        if gid != prev:
            starts[gid] = node
            prev = gid
        counts[gid - 1] += 1
    if len(starts) != n_graphs:
        missing = sorted(set(range(1, n_graphs + 1)) - set(starts))
        raise FormatError(f"graphs with no nodes in indicator: {missing[:5]}")

    edge_lists: list[list[Edge]] = [[] for _ in range(n_graphs)]
    for lineno, (u, v) in enumerate(adj_rows, 1):
        for x in (u, v):
            if not 1 <= x <= len(indicator):
                raise FormatError(f"{name}_A.txt:{lineno}: node id {x} not in indicator")
        gu, gv = indicator[u - 1], indicator[v - 1]
        if gu != gv:
            raise FormatError(f"{name}_A.txt:{lineno}: edge ({u}, {v}) crosses graphs {gu} and {gv}")
        base = starts[gu]
        edge_lists[gu - 1].append((u - 1 - base, v - 1 - base))

    label_values = sorted(set(labels_raw))
    remap = {v: i for i, v in enumerate(label_values)}
    graphs = []
    for gi in range(n_graphs):
        try:
            g = graph_from_edge_list(counts[gi], edge_lists[gi], label=remap[labels_raw[gi]])
        except ValidationError as exc:
            raise FormatError(f"graph {gi + 1}: {exc}") from None
        graphs.append(g)
    return GraphDataset(name, tuple(graphs), len(label_values))


def write_tu_dataset(ds: GraphDataset, root_dir: str | os.PathLike, name: Optional[str] = None) -> Path:
    """Write ``ds`` in TUDataset text format; both directions of each edge are emitted."""
    name = name or ds.name
    root = Path(root_dir)
    root.mkdir(parents=True, exist_ok=True)
    a_lines, ind_lines, lab_lines = [], [], []
    offset = 0
    for gi, g in enumerate(ds.graphs, 1):
        ind_lines.extend([str(gi)] * g.num_nodes)
        for i, j in g.sorted_edges:
            a_lines.append(f"{i + 1 + offset}, {j + 1 + offset}")
            a_lines.append(f"{j + 1 + offset}, {i + 1 + offset}")
        lab_lines.append(str(g.label if g.label is not None else 0))
        offset += g.num_nodes
    for suffix, lines in (("A", a_lines), ("graph_indicator", ind_lines), ("graph_labels", lab_lines)):
        (root / f"{name}_{suffix}.txt").write_text("".join(line + "\n" for line in lines))
    return root
