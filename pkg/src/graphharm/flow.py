"""st-potentials, st-electrical flows, and edge centrality measures.

An st-potential is p_st = L^+(1_s - 1_t); the matching flow is
f_st = W boundary^T p_st, signed relative to each edge's stored
orientation.  The all-pairs centralities reuse one spectral decomposition
and loop over source vertices, so the per-pair cost is O(m).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import harmonic, spectra
from .graph import Graph, GraphError, require_connected
from .harmonic import EdgeScores


@dataclass(frozen=True)
class Potential:
    source: int
    target: int
    values: np.ndarray  # vertex-indexed


@dataclass(frozen=True)
class Flow:
    source: int
    target: int
    values: np.ndarray  # edge-indexed, signed by stored orientation


def st_potential(g: Graph, s: int, t: int, dec=None) -> Potential:
    if s == t:
        raise GraphError("st-potential requires s != t")
    dec = harmonic._connected_dec(g, dec)
    M = spectra.pinv_power(dec, 1.0)
    return Potential(s, t, M[:, s] - M[:, t])


def flow_matrix(g: Graph, dec=None) -> np.ndarray:
    """F = W boundary^T L^+ (m x n); f_st is column s minus column t."""
    dec = harmonic._connected_dec(g, dec)
    M = spectra.pinv_power(dec, 1.0)
    return (g.weights[:, None] * g.boundary().T) @ M


def st_flow(g: Graph, s: int, t: int, dec=None) -> Flow:
    if s == t:
        raise GraphError("st-flow requires s != t")
    F = flow_matrix(g, dec)
    return Flow(s, t, F[:, s] - F[:, t])


def min_norm_certificate(
    g: Graph, f: Flow, trials: int = 20, seed: int = 0, tol: float = 1e-8
) -> bool:
    """Check f is the minimum-energy flow for its divergence.

    The electrical flow is W^{-1}-orthogonal to every circulation
    (ker boundary); sample random circulations and test the inner product.
    """
    B = g.boundary()
    P = np.eye(g.m) - np.linalg.pinv(B) @ B  # projector onto ker boundary
    rng = np.random.default_rng(seed)
    target = f.values / g.weights
    scale = max(1.0, float(np.linalg.norm(target)))
    for _ in range(trials):
        c = P @ rng.standard_normal(g.m)
        norm = np.linalg.norm(c)
        if norm < 1e-12:
            continue
        c /= norm
        if abs(c @ target) > tol * scale:
            return False
    return True


def generalized_flow_matrix(g: Graph, k: float, dec=None) -> np.ndarray:
    """Rows (weighted_boundary 1_e)^T (L^+)^k, an m x n matrix.

    At k=1 row e against (1_s - 1_t) gives f_st(e)/sqrt(w_e).
    """
    dec = harmonic._connected_dec(g, dec)
    return g.weighted_boundary().T @ spectra.pinv_power(dec, k)


def squared_flow_centrality(g: Graph, dec=None) -> EdgeScores:
    """Per edge, sum over unordered pairs of f_st(e)^2 / w_e.

    Computed from explicit all-pairs flows; this is the brute-force
    counterpart of the n * w_e * B_e^2 identity, kept as an independent
    route.
    """
    F = flow_matrix(g, dec)
    acc = np.zeros(g.m)
    for s in range(g.n - 1):
        diffs = F[:, s][:, None] - F[:, s + 1:]
        acc += np.sum(diffs**2, axis=1)
    return EdgeScores(acc / g.weights, "sum f_st(e)^2/w_e")


def current_flow_centrality(g: Graph, dec=None) -> EdgeScores:
    """C_e = sum over unordered pairs of |f_st(e)|."""
    F = flow_matrix(g, dec)
    acc = np.zeros(g.m)
    for s in range(g.n - 1):
        acc += np.sum(np.abs(F[:, s][:, None] - F[:, s + 1:]), axis=1)
    return EdgeScores(acc, "C_e")


def edge_betweenness(g: Graph) -> EdgeScores:
    """Shortest-path edge betweenness on the hop metric.

    Brandes accumulation over all sources; each unordered pair contributes
    the fraction of shortest st-paths through the edge.
    """
    require_connected(g)
    adj = g.neighbors_lists()
    scores = np.zeros(g.m)
    for s in range(g.n):
        # BFS with path counting
        dist = np.full(g.n, -1)
        sigma = np.zeros(g.n)
        dist[s] = 0
        sigma[s] = 1.0
        order = [s]
        head = 0
        preds: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        while head < len(order):
            x = order[head]
            head += 1
            for y, e in adj[x]:
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    order.append(y)
                if dist[y] == dist[x] + 1:
                    sigma[y] += sigma[x]
                    preds[y].append((x, e))
        delta = np.zeros(g.n)
        for x in reversed(order):
            for p, e in preds[x]:
                share = sigma[p] / sigma[x] * (1.0 + delta[x])
                scores[e] += share
                delta[p] += share
    return EdgeScores(scores / 2.0, "betweenness")  # each pair counted from both ends


def spearman(scores_a: EdgeScores, scores_b: EdgeScores) -> float:
    """Spearman rank correlation with average ranks for ties."""
    a, b = scores_a.values, scores_b.values
    if len(a) != len(b):
        raise GraphError(f"edge sets differ in size ({len(a)} vs {len(b)})")
    if len(a) < 2:
        raise GraphError("need at least 2 edges for a rank correlation")
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise GraphError("degenerate ranking: all scores tied")
    rho, _ = stats.spearmanr(a, b)
    return float(rho)


MEASURES = ("resistance", "biharmonic2", "kharmonic2", "current-flow", "betweenness")


def edge_measure(g: Graph, measure: str, k: float | None = None, dec=None) -> EdgeScores:
    """Evaluate a named per-edge centrality measure."""
    if measure == "resistance":
        return harmonic.edge_kharmonic_sq(g, 1.0, dec)
    if measure == "biharmonic2":
        return harmonic.biharmonic_edge_sq(g, dec)
    if measure == "kharmonic2":
        if k is None:
            raise GraphError("measure kharmonic2 requires a value of k")
        return harmonic.edge_kharmonic_sq(g, float(k), dec)
    if measure == "current-flow":
        return current_flow_centrality(g, dec)
    if measure == "betweenness":
        return edge_betweenness(g)
    raise GraphError(f"unknown measure {measure!r}; choose from {MEASURES}")


def _sample_non_edges(g: Graph, count: int, rng: np.random.Generator):
    existing = {(min(u, v), max(u, v)) for u, v, _ in g.edges}
    pool = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in existing
    ]
    if not pool:
        raise GraphError("graph is already complete; no edges can be added")
    if count > len(pool):
        raise GraphError(f"cannot add {count} edges; only {len(pool)} non-edges exist")
    idx = rng.choice(len(pool), size=count, replace=False)
    return [(pool[i][0], pool[i][1], 1.0) for i in sorted(idx)]


def resilience_experiment(
    g: Graph,
    measure: str,
    num_added: int,
    trials: int,
    seed: int,
    k: float | None = None,
) -> list[float]:
    """Spearman correlation of a measure against its perturbed self.

    Each trial adds `num_added` uniformly random non-edges (derived
    sub-seed), recomputes the measure, and correlates the scores on the
    ORIGINAL edges only.
    """
    require_connected(g)
    original = edge_measure(g, measure, k)
    out = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        extra = _sample_non_edges(g, num_added, rng)
        perturbed = edge_measure(g.with_edges_added(extra), measure, k)
        restricted = EdgeScores(perturbed.values[: g.m], perturbed.meaning)
        out.append(spearman(original, restricted))
    return out
