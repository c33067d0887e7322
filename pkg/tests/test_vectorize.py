import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphph.errors import ValidationError
from graphph.persistence import PersistenceDiagram, betti_from_diagram
from graphph.rips import threshold_grid
from graphph.stability import random_diagram
from graphph.vectorize import (
    StepFunction,
    betti_function,
    betti_l1_distance,
    clamp,
    evaluate_grid,
    landscape,
    silhouette,
    tents,
    vectorize,
)

P = PersistenceDiagram


def test_betti_function_example():
    sf = betti_function(P(0, ((0, 2), (1, 3))))
    assert sf.breakpoints.tolist() == [0, 1, 2, 3]
    assert sf.levels.tolist() == [1, 2, 1, 0]
    assert evaluate_grid(sf, [0.5, 1.5, 2.5, 3.5]).values.tolist() == [1, 2, 1, 0]
    assert sf(0.0) == 1 and sf(-0.1) == 0 and sf(3.0) == 0


def test_betti_function_trivial():
    for pd in (P(0), P(0, ((1, 1),))):
        sf = betti_function(pd)
        assert evaluate_grid(sf, [0, 1, 2]).values.tolist() == [0, 0, 0]


def test_persistence_weight():
    sf = betti_function(P(0, ((0, 2), (1, 3))), weight="persistence")
    assert evaluate_grid(sf, [0.5, 1.5, 2.5, 3.5]).values.tolist() == [2, 4, 2, 0]
    with pytest.raises(ValidationError):
        betti_function(P(0), weight="other")


def test_betti_rejects_infinite():
    with pytest.raises(ValidationError):
        betti_function(P(0, ((0, math.inf),)))


def test_clamp():
    pd = P(0, ((0, 1), (0, math.inf)), cap=2.0)
    assert clamp(pd).points == ((0, 1), (0, 2))
    with pytest.raises(ValidationError):
        clamp(P(0, ((0, math.inf),)))
    assert clamp(P(0, ((0, 1),))) == P(0, ((0, 1),))


def test_landscape_examples():
    pd = P(0, ((0, 2),))
    assert landscape(pd, 1, [0.5, 1, 2]).values.tolist() == [0.5, 1, 0]
    assert landscape(pd, 2, [0.5, 1, 2]).values.tolist() == [0, 0, 0]
    assert landscape(P(0, ((0, 2), (1, 3))), 1, [1.5]).values.tolist() == [0.5]
    with pytest.raises(ValidationError):
        landscape(pd, 0, [0, 1])


def test_silhouette_examples():
    grid = np.linspace(0, 3, 13)
    one = P(0, ((0, 2),))
    for power in (0, 1, 2.5):
        assert np.allclose(silhouette(one, power, grid).values, tents(one, grid)[0])
    assert silhouette(P(0, ((0, 2), (0, 4))), 1, [1.0]).values.tolist() == [1.0]
    assert silhouette(P(0), 1, grid).values.tolist() == [0] * 13
    assert silhouette(P(0, ((1, 1),)), 0, grid).values.tolist() == [0] * 13


def test_grid_validation():
    with pytest.raises(ValidationError):
        evaluate_grid(betti_function(P(0)), [1, 0])
    with pytest.raises(ValidationError):
        landscape(P(0), 1, [])


def test_l1_examples():
    a = betti_function(P(0, ((0, 2),)))
    assert betti_l1_distance(a, a) == 0
    assert betti_l1_distance(a, betti_function(P(0, ((0, 1),)))) == 1
    assert betti_l1_distance(betti_function(P(0, ((0, 1),))), betti_function(P(0, ((2, 3),)))) == 2
    assert betti_l1_distance(betti_function(P(0)), betti_function(P(0))) == 0


def test_step_function_validation():
    with pytest.raises(ValidationError):
        StepFunction(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    with pytest.raises(ValidationError):
        StepFunction(np.array([1.0, 0.0]), np.array([1.0, 0.0]))


def test_vectorize_dispatch():
    pd = P(1, ((0.25, math.inf),), cap=1.0)
    grid = threshold_grid(5)
    assert vectorize(pd, "betti", grid).values.tolist() == [0, 1, 1, 1, 0]
    assert vectorize(pd, "landscape", grid).values.tolist() == [0, 0, 0.25, 0.25, 0]
    with pytest.raises(ValidationError):
        vectorize(pd, "kernel", grid)


def lattice_diagram(rng, n):
    # endpoints on a 1/1000 lattice so midpoint sums on a 1e5 mesh are exact
    b = rng.integers(0, 1000, n)
    d = b + rng.integers(0, 1001 - b)
    return P(0, tuple(zip((b / 1000).tolist(), (d / 1000).tolist())), cap=1.0)


@given(st.integers(0, 2**31), st.integers(0, 12), st.integers(0, 12))
def test_l1_matches_numeric_integration(seed, n1, n2):
    rng = np.random.default_rng(seed)
    a, b = lattice_diagram(rng, n1), lattice_diagram(rng, n2)
    fa, fb = betti_function(a), betti_function(b)
    h = 1e-5
    mid = (np.arange(100000) + 0.5) * h
    numeric = float(np.sum(np.abs(fa(mid) - fb(mid))) * h)
    assert betti_l1_distance(fa, fb) == pytest.approx(numeric, abs=1e-9)


@given(st.integers(0, 2**31), st.integers(0, 25))
def test_betti_grid_matches_interval_count(seed, n):
    pd = random_diagram(n, seed)
    grid = threshold_grid(100)
    vals = evaluate_grid(betti_function(pd), grid).values
    assert vals.tolist() == [betti_from_diagram(pd, t) for t in grid]
    assert np.all(vals >= 0) and np.all(vals == np.rint(vals))


@given(st.integers(0, 2**31), st.integers(0, 25), st.integers(1, 4))
def test_landscape_order_lipschitz(seed, n, k):
    pd = random_diagram(n, seed)
    grid = threshold_grid(100)
    h = grid[1] - grid[0]
    lam = landscape(pd, k, grid).values
    nxt = landscape(pd, k + 1, grid).values
    assert np.all(lam >= nxt) and np.all(lam >= 0)
    assert np.all(np.abs(np.diff(lam)) <= h + 1e-12)


@given(st.integers(0, 2**31), st.integers(0, 25), st.floats(0, 3))
def test_silhouette_convex_combination(seed, n, power):
    pd = random_diagram(n, seed)
    grid = threshold_grid(100)
    phi = silhouette(pd, power, grid).values
    top = tents(pd, grid).max(axis=0) if n else np.zeros(100)
    assert np.all(phi >= 0) and np.all(phi <= top + 1e-12)
