"""Small named graphs with frozen expected diagrams.

Each fixture lives in ``fixture_data/<name>/`` as a one-graph TUDataset
directory plus ``expected.json``. Expected diagrams are computed on the raw
(unnormalized) shortest-path metric with no threshold cap, so every finite
distance enters the filtration.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .graph import Graph, parse_tu_dataset
from .metric import DistanceMatrix, shortest_path_matrix
from .persistence import PersistenceDiagram, diagram_from_records

FIXTURE_DIR = Path(__file__).parent / "fixture_data"


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    expected: dict = field(hash=False)
    # artifact name -> "published example: ...", "by inspection: ..." or "oracle: <name>"
    provenance: dict = field(hash=False)
    edge_weights: Optional[dict] = field(default=None, hash=False)
    description: str = ""

    def distance_matrix(self) -> DistanceMatrix:
        """Hop distances, or weighted shortest paths when the fixture carries edge weights."""
        if not self.edge_weights:
            return shortest_path_matrix(self.graph)
        n = self.graph.num_nodes
        w = np.zeros((n, n))
        for (i, j), x in self.edge_weights.items():
            w[i, j] = w[j, i] = x
        return DistanceMatrix(shortest_path(csr_matrix(w), method="D", directed=False))

    def expected_diagram(self, dim: int) -> PersistenceDiagram:
        return diagram_from_records(self.expected[f"h{dim}"], dim=dim)


def load_fixture(path: Path) -> Fixture:
    name = path.name
    meta = json.loads((path / "expected.json").read_text())
    graph = parse_tu_dataset(path, name).graphs[0]
    weights = None
    if meta.get("edge_weights"):
        weights = {(int(i), int(j)): float(w) for i, j, w in meta["edge_weights"]}
    return Fixture(
        name=name,
        graph=graph,
        expected=meta["expected"],
        provenance=meta["provenance"],
        edge_weights=weights,
        description=meta.get("description", ""),
    )


@lru_cache(maxsize=None)
def _catalog() -> tuple[Fixture, ...]:
    return tuple(load_fixture(p) for p in sorted(FIXTURE_DIR.iterdir()) if (p / "expected.json").is_file())


def fixture_catalog() -> list[Fixture]:
    return list(_catalog())


def get_fixture(name: str) -> Fixture:
    for fx in _catalog():
        if fx.name == name:
            return fx
    raise KeyError(name)


def records(points) -> list[dict]:
    return [{"birth": b, "death": "inf" if math.isinf(d) else d} for b, d in points]
