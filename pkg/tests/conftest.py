import os
from pathlib import Path

import networkx as nx
import numpy as np
import pytest
from hypothesis import settings

from graphph.graph import Graph, graph_from_edge_list, parse_tu_dataset

ROOT = Path(__file__).resolve().parents[1]
MUTAG_DIR = Path(os.environ.get("GRAPH_PH_MUTAG", ROOT / "data" / "MUTAG"))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def mutag():
    if not (MUTAG_DIR / "MUTAG_A.txt").is_file():
        pytest.fail(f"MUTAG not found in {MUTAG_DIR}; run scripts/fetch_mutag.py")
    return parse_tu_dataset(MUTAG_DIR, "MUTAG")


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return graph_from_edge_list(n, edges)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.num_nodes))
    h.add_edges_from(g.edges)
    return h


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
