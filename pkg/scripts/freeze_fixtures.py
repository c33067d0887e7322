"""Regenerate src/graphph/fixture_data from the brute-force oracles.

Run once after changing the fixture definitions below; the output is
committed. Expected diagrams come from ``graphph.oracles.naive_diagrams``
(exhaustive clique enumeration + unoptimized full boundary reduction), never
from the fast persistence code.
"""
import json
import math
import shutil

import numpy as np

from graphph.fixtures import FIXTURE_DIR, Fixture, records
from graphph.graph import GraphDataset, graph_from_edge_list, write_tu_dataset
from graphph.metric import normalize
from graphph.oracles import naive_diagrams

ORACLE = "oracle: oracles.naive_diagrams (clique enumeration + full Z/2 reduction)"

# Six nodes A..F. The loop C-D-F-E closes at 3 and is filled at 4 when the
# chord D-E creates triangles CDE and DEF; C-F stays at 6.
HOLE_WEIGHTS = [
    (0, 1, 1.0),  # A-B
    (1, 2, 2.0),  # B-C
    (2, 3, 3.0),  # C-D
    (2, 4, 3.0),  # C-E
    (3, 5, 3.0),  # D-F
    (4, 5, 3.0),  # E-F
    (3, 4, 4.0),  # D-E
]


def random12(seed=7, p=0.3):
    rng = np.random.default_rng(seed)
    n = 12
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return graph_from_edge_list(n, edges, label=0)


def definitions():
    return [
        ("p3", graph_from_edge_list(3, [(0, 1), (1, 2)], 0), None, "path 0-1-2",
         {"h0": "oracle: MST weights {1, 1} plus one essential class"}),
        ("k3", graph_from_edge_list(3, [(0, 1), (1, 2), (0, 2)], 0), None, "triangle",
         {"h1": "by inspection: loop is born and filled at 1"}),
        ("c4", graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)], 0), None, "4-cycle",
         {"h1": "by inspection: loop completes at 1, diagonals fill it at 2"}),
        ("two_edges", graph_from_edge_list(4, [(0, 1), (2, 3)], 0), None, "two disjoint edges",
         {"h0": "oracle: per-component MST"}),
        ("edgeless3", graph_from_edge_list(3, [], 0), None, "three isolated nodes",
         {"h0": "by inspection: n essential classes", "h1": "by inspection: no edges"}),
        ("weighted_hole", graph_from_edge_list(6, [(i, j) for i, j, _ in HOLE_WEIGHTS], 0), HOLE_WEIGHTS,
         "weighted six-node graph A..F whose shortest-path Rips filtration has one loop born at 3, filled at 4",
         {"h1": "published example: hole formed at 3, filled at 4"}),
        ("random12", random12(), None, "G(12, 0.3) drawn with numpy seed 7", {}),
    ]


def main():
    if FIXTURE_DIR.exists():
        shutil.rmtree(FIXTURE_DIR)
    for name, graph, weights, desc, tags in definitions():
        wmap = {(i, j): w for i, j, w in weights} if weights else None
        fx = Fixture(name, graph, {}, {}, wmap, desc)
        dm = fx.distance_matrix()
        dgms = naive_diagrams(dm.entries, math.inf)
        expected = {"h0": records(dgms[0]), "h1": records(dgms[1])}
        provenance = {"h0": ORACLE, "h1": ORACLE}
        if dm.max_finite > 0:
            ndgms = naive_diagrams(normalize(dm).entries, 1.0)
            expected["h1_normalized"] = records(ndgms[1])
            provenance["h1_normalized"] = ORACLE
        for key, tag in tags.items():
            provenance[key] = f"{tag}; checked by {ORACLE}"
        out = FIXTURE_DIR / name
        write_tu_dataset(GraphDataset(name, (graph,), 1), out, name)
        meta = {
            "description": desc,
            "edge_weights": [list(w) for w in weights] if weights else None,
            "expected": expected,
            "provenance": provenance,
        }
        (out / "expected.json").write_text(json.dumps(meta, indent=2) + "\n")
        print(name, expected["h0"][:3], expected["h1"])


if __name__ == "__main__":
    main()
