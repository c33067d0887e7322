import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphph.graph import graph_from_edge_list
from graphph.metric import DistanceMatrix, normalize, resistance_distance_matrix, shortest_path_matrix
from graphph.errors import ValidationError

from conftest import random_graph, to_nx

P3 = graph_from_edge_list(3, [(0, 1), (1, 2)])
K3 = graph_from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
C4 = graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_spd_examples():
    assert shortest_path_matrix(P3).entries[0, 2] == 2
    assert math.isinf(shortest_path_matrix(graph_from_edge_list(2, [])).entries[0, 1])
    d = shortest_path_matrix(C4).entries
    assert d[0, 2] == d[1, 3] == 2
    assert d[0, 1] == d[1, 2] == d[2, 3] == d[0, 3] == 1


@given(st.integers(0, 2**31), st.integers(1, 14), st.floats(0.05, 0.6))
def test_spd_matches_bfs_oracle(seed, n, p):
    g = random_graph(np.random.default_rng(seed), n, p)
    d = shortest_path_matrix(g).entries
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for i in range(n):
        for j in range(n):
            assert d[i, j] == ref[i].get(j, math.inf)


@given(st.integers(0, 2**31), st.integers(3, 12))
def test_spd_triangle_inequality(seed, n):
    d = shortest_path_matrix(random_graph(np.random.default_rng(seed), n, 0.4)).entries
    for k in range(n):
        assert np.all(d <= d[:, [k]] + d[[k], :])


def _pinv_resistance(g):
    """Oracle: numpy pinv of the whole-component Laplacian."""
    lap = nx.laplacian_matrix(to_nx(g), nodelist=range(g.num_nodes)).toarray().astype(float)
    lp = np.linalg.pinv(lap)
    return np.diag(lp)[:, None] + np.diag(lp)[None, :] - 2 * lp


def test_resistance_examples():
    assert resistance_distance_matrix(graph_from_edge_list(2, [(0, 1)])).entries[0, 1] == pytest.approx(1.0)
    k3 = resistance_distance_matrix(K3).entries
    assert k3[0, 1] == pytest.approx(2 / 3, abs=1e-12)
    assert k3[0, 1] == pytest.approx(_pinv_resistance(K3)[0, 1], abs=1e-12)
    p3 = resistance_distance_matrix(P3).entries
    assert p3[0, 2] == pytest.approx(2.0, abs=1e-12)


def test_resistance_disconnected_is_infinite():
    d = resistance_distance_matrix(graph_from_edge_list(4, [(0, 1), (2, 3)])).entries
    assert math.isinf(d[0, 2]) and d[0, 1] == pytest.approx(1.0)


@given(st.integers(0, 2**31), st.integers(2, 12))
def test_resistance_metric_and_bounded_by_spd(seed, n):
    g = random_graph(np.random.default_rng(seed), n, 0.45)
    r = resistance_distance_matrix(g).entries
    s = shortest_path_matrix(g).entries
    assert np.array_equal(r, r.T) and np.all(r >= 0)
    fin = np.isfinite(s)
    assert np.array_equal(fin, np.isfinite(r))
    assert np.all(r[fin] <= s[fin] + 1e-9)
    for k in range(n):
        with np.errstate(invalid="ignore"):
            rhs = r[:, [k]] + r[[k], :]
        assert np.all((r <= rhs + 1e-9) | ~np.isfinite(rhs))
    if nx.is_connected(to_nx(g)):
        assert np.allclose(r, _pinv_resistance(g), atol=1e-9)


def test_normalize_examples():
    dm = DistanceMatrix(np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], dtype=float))
    out = normalize(dm).entries
    assert set(out.ravel()) == {0.0, 0.5, 1.0}
    assert normalize(normalize(dm)) == normalize(dm)
    inf = DistanceMatrix(np.array([[0, 3, np.inf], [3, 0, np.inf], [np.inf, np.inf, 0]]))
    n = normalize(inf).entries
    assert n[0, 1] == 1.0 and math.isinf(n[0, 2])
    zero = DistanceMatrix(np.zeros((2, 2)))
    assert normalize(zero) == zero


@given(st.integers(0, 2**31), st.integers(2, 12))
def test_normalize_idempotent_monotone(seed, n):
    dm = shortest_path_matrix(random_graph(np.random.default_rng(seed), n, 0.4))
    a = normalize(dm)
    assert normalize(a) == a
    x, y = dm.entries.ravel(), a.entries.ravel()
    order = np.argsort(x, kind="stable")
    assert np.all(np.diff(y[order][np.isfinite(y[order])]) >= 0)
    if dm.max_finite > 0:
        assert a.max_finite == 1.0


def test_distance_matrix_validation():
    with pytest.raises(ValidationError):
        DistanceMatrix(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValidationError):
        DistanceMatrix(np.array([[1, 1], [1, 0]]))
    with pytest.raises(ValidationError):
        DistanceMatrix(np.array([[0, -1], [-1, 0]]))


def test_csv_dump(tmp_path):
    shortest_path_matrix(graph_from_edge_list(3, [(0, 1)])).to_csv(tmp_path / "d.csv")
    assert (tmp_path / "d.csv").read_text().splitlines()[0] == "0,1,inf"
