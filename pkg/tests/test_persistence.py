import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphph.errors import ValidationError
from graphph.graph import connected_components, graph_from_edge_list
from graphph.metric import normalize, resistance_distance_matrix, shortest_path_matrix
from graphph.oracles import betti_numbers_at, naive_diagrams
from graphph.persistence import (
    PersistenceDiagram,
    betti_from_diagram,
    diagram_from_records,
    diagrams,
    persistence_h0,
    persistence_h1,
)
from graphph.rips import build_flag_filtration, complex_at, reorder_ties, threshold_grid

from conftest import random_graph

INF = math.inf


def pd_of(g, threshold=np.inf, metric=shortest_path_matrix):
    return diagrams(build_flag_filtration(metric(g), threshold=threshold))


def test_examples():
    p3 = pd_of(graph_from_edge_list(3, [(0, 1), (1, 2)]))
    assert p3[0].points == ((0, 1), (0, 1), (0, INF))
    assert p3[1].points == ()
    assert pd_of(graph_from_edge_list(3, []))[0].points == ((0, INF),) * 3
    two = pd_of(graph_from_edge_list(4, [(0, 1), (2, 3)]))[0]
    assert two.points == ((0, 1), (0, 1), (0, INF), (0, INF))
    c4 = pd_of(graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), threshold=2)
    assert c4[1].points == ((1, 2),)


def test_essential_loop_below_fill():
    c4 = graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert pd_of(c4, threshold=1.5)[1].points == ((1, INF),)


def test_h1_needs_triangles():
    f = build_flag_filtration(shortest_path_matrix(graph_from_edge_list(2, [(0, 1)])), max_dim=1)
    with pytest.raises(ValidationError):
        persistence_h1(f)
    with pytest.raises(ValidationError):
        diagrams(f, dims=(2,))


def test_betti_from_diagram():
    pd = PersistenceDiagram(0, ((0, 1), (0, INF)))
    assert betti_from_diagram(pd, 0.5) == 2 and betti_from_diagram(pd, 1) == 1
    assert betti_from_diagram(PersistenceDiagram(1), 3) == 0
    assert betti_from_diagram(PersistenceDiagram(1, ((1, 2),)), 2) == 0


def test_records_round_trip():
    pd = PersistenceDiagram(1, ((0.5, 1.0), (0.25, INF)), cap=1.0)
    again = diagram_from_records(pd.to_records(), cap=1.0)
    assert again == pd
    with pytest.raises(ValidationError):
        diagram_from_records([{"dim": 0, "birth": 0, "death": 1}, {"dim": 1, "birth": 0, "death": 1}])


def test_diagram_rejects_bad_points():
    with pytest.raises(ValidationError):
        PersistenceDiagram(0, ((2, 1),))
    with pytest.raises(ValidationError):
        PersistenceDiagram(0, ((INF, INF),))


def mst_weights(dm):
    h = nx.Graph()
    h.add_nodes_from(range(dm.size))
    e = dm.entries
    for i in range(dm.size):
        for j in range(i + 1, dm.size):
            if math.isfinite(e[i, j]):
                h.add_edge(i, j, weight=e[i, j])
    return sorted(d["weight"] for *_, d in nx.minimum_spanning_edges(h, data=True))


@given(st.integers(0, 2**31), st.integers(1, 20), st.floats(0.05, 0.5), st.booleans())
def test_h0_is_mst(seed, n, p, resist):
    g = random_graph(np.random.default_rng(seed), n, p)
    dm = normalize(resistance_distance_matrix(g) if resist else shortest_path_matrix(g))
    h0 = persistence_h0(build_flag_filtration(dm, max_dim=1, threshold=np.inf))
    finite = sorted(d for _, d in h0.points if math.isfinite(d))
    assert finite == pytest.approx(mst_weights(dm), abs=0)
    assert len(h0) == n and all(b == 0 for b, _ in h0.points)
    assert h0.essential_count() == len(connected_components(g))


@given(st.integers(0, 2**31), st.integers(1, 11), st.floats(0.1, 0.6), st.sampled_from([0.5, 1.0]))
def test_matches_naive_reduction(seed, n, p, t):
    g = random_graph(np.random.default_rng(seed), n, p)
    dm = normalize(resistance_distance_matrix(g))
    ours = diagrams(build_flag_filtration(dm, threshold=t))
    ref = naive_diagrams(dm.entries, t)
    assert list(ours[0].points) == ref[0]
    assert list(ours[1].points) == ref[1]
    assert all(b < d for b, d in ours[1].points)


@given(st.integers(0, 2**31), st.integers(2, 10))
def test_tie_break_invariance(seed, n):
    rng = np.random.default_rng(seed)
    f = build_flag_filtration(normalize(shortest_path_matrix(random_graph(rng, n, 0.4))))
    g = reorder_ties(f, rng.random(len(f.simplices)).tolist())
    assert diagrams(f) == diagrams(g)


@given(st.integers(0, 2**31), st.integers(1, 8))
def test_euler_characteristic(seed, n):
    g = random_graph(np.random.default_rng(seed), n, 0.5)
    dm = normalize(shortest_path_matrix(g))
    f = build_flag_filtration(dm)
    pds = diagrams(f)
    for t in threshold_grid(9):
        v, e, tri = complex_at(f, t)
        chi = v - e + tri
        b0, b1 = betti_from_diagram(pds[0], t), betti_from_diagram(pds[1], t)
        rb0, rb1, rb2 = betti_numbers_at(dm.entries, t)
        assert (b0, b1) == (rb0, rb1)
        if rb2 == 0:
            assert b0 - b1 == chi
        # without the acyclicity check only b0 - b1 = chi - b2 <= chi holds
        assert b0 - b1 <= chi


def test_mutag_h0_shape(mutag):
    for g in mutag.graphs[:40]:
        pds = pd_of(g, threshold=1.0, metric=lambda x: normalize(shortest_path_matrix(x)))
        assert len(pds[0]) == g.num_nodes
        assert pds[0].essential_count() >= 1
