import numpy as np
import pytest

from graphharm import flow, generators, harmonic
from graphharm.flow import (
    current_flow_centrality,
    edge_betweenness,
    edge_measure,
    min_norm_certificate,
    resilience_experiment,
    spearman,
    squared_flow_centrality,
    st_flow,
    st_potential,
)
from graphharm.graph import GraphError, build_graph
from graphharm.harmonic import EdgeScores
from conftest import random_weighted


def test_path_potential_values(p3):
    p = st_potential(p3, 0, 2).values
    assert np.allclose(p, [1.0, 0.0, -1.0], atol=1e-12)


def test_potential_properties():
    g = random_weighted(12, 0.4, seed=9)
    p = st_potential(g, 2, 7).values
    assert float(np.sum(p)) == pytest.approx(0.0, abs=1e-10)
    assert p[2] - p[7] == pytest.approx(harmonic.effective_resistance(g, 2, 7), abs=1e-10)
    assert float(p @ p) == pytest.approx(
        harmonic.biharmonic_distance(g, 2, 7) ** 2, abs=1e-10
    )
    assert p[2] == pytest.approx(float(np.max(p)), abs=1e-12)
    assert p[7] == pytest.approx(float(np.min(p)), abs=1e-12)


def test_flow_conservation():
    g = random_weighted(10, 0.5, seed=4)
    f = st_flow(g, 0, 5).values
    div = g.boundary() @ f
    expected = np.zeros(g.n)
    expected[0], expected[5] = 1.0, -1.0
    assert np.allclose(div, expected, atol=1e-10)


def test_flow_energy_equals_resistance():
    g = random_weighted(10, 0.5, seed=4)
    f = st_flow(g, 1, 8)
    energy = float(np.sum(f.values**2 / g.weights))
    assert energy == pytest.approx(harmonic.effective_resistance(g, 1, 8), abs=1e-10)


def test_flow_on_path_is_unit(p3):
    assert np.allclose(st_flow(p3, 0, 2).values, [1.0, 1.0], atol=1e-12)


def test_min_norm_certificate():
    g = random_weighted(9, 0.6, seed=3)
    f = st_flow(g, 0, 4)
    assert min_norm_certificate(g, f)
    # a flow with a circulation added is still feasible but not minimal
    cyc = build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
    good = st_flow(cyc, 0, 2)
    bumped = flow.Flow(good.source, good.target,
                       good.values + np.array([1.0, 1.0, 1.0, 1.0]))
    assert not min_norm_certificate(cyc, bumped)


def test_squared_flow_matches_closed_form():
    g = random_weighted(12, 0.5, seed=6)
    brute = squared_flow_centrality(g).values
    closed = g.n * g.weights * harmonic.biharmonic_edge_sq(g).values
    assert np.allclose(brute, closed, atol=1e-9)


def test_path_centralities(p3):
    assert np.allclose(squared_flow_centrality(p3).values, [2.0, 2.0], atol=1e-12)
    assert np.allclose(current_flow_centrality(p3).values, [2.0, 2.0], atol=1e-12)
    assert np.allclose(edge_betweenness(p3).values, [2.0, 2.0], atol=1e-12)


def test_betweenness_on_barbell(barbell):
    b = edge_betweenness(barbell).values
    assert int(np.argmax(b)) == 3  # the bridge carries all cross pairs
    assert b[3] == pytest.approx(9.0)


def test_betweenness_counts_k4(k4):
    # all shortest paths are direct edges; each edge carries only its own pair
    assert np.allclose(edge_betweenness(k4).values, 1.0, atol=1e-12)


def test_spearman_perfect_and_reversed():
    a = EdgeScores(np.array([1.0, 2.0, 3.0, 4.0]), "a")
    b = EdgeScores(np.array([10.0, 20.0, 30.0, 40.0]), "b")
    assert spearman(a, b) == pytest.approx(1.0)
    c = EdgeScores(np.array([4.0, 3.0, 2.0, 1.0]), "c")
    assert spearman(a, c) == pytest.approx(-1.0)


def test_spearman_rejects_degenerate():
    a = EdgeScores(np.array([1.0, 1.0, 1.0]), "a")
    b = EdgeScores(np.array([1.0, 2.0, 3.0]), "b")
    with pytest.raises(GraphError, match="degenerate"):
        spearman(a, b)
    with pytest.raises(GraphError, match="size"):
        spearman(b, EdgeScores(np.array([1.0, 2.0]), "short"))


def test_edge_measure_dispatch():
    g = generators.erdos_renyi(10, 0.5, seed=5)
    for name in flow.MEASURES:
        scores = edge_measure(g, name, k=3.0)
        assert scores.values.shape == (g.m,)
    with pytest.raises(GraphError, match="requires"):
        edge_measure(g, "kharmonic2")
    with pytest.raises(GraphError, match="unknown measure"):
        edge_measure(g, "pagerank")


def test_resilience_is_deterministic():
    g = generators.erdos_renyi(20, 0.3, seed=1)
    a = resilience_experiment(g, "resistance", num_added=3, trials=4, seed=7)
    b = resilience_experiment(g, "resistance", num_added=3, trials=4, seed=7)
    assert a == b
    assert len(a) == 4
    assert all(-1.0 <= r <= 1.0 for r in a)


def test_resilience_rejects_complete_graph(k4):
    with pytest.raises(GraphError):
        resilience_experiment(k4, "resistance", num_added=1, trials=1, seed=0)
