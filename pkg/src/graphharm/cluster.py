"""Clustering: Lloyd's k-means over spectral embeddings, Girvan-Newman
with pluggable edge measures, sweep cuts, and purity evaluation.

The k-harmonic k-means algorithms embed vertices so that pairwise
Euclidean distances equal the (rank-r) k-harmonic distance, then run
seeded k-means.  The k -> 0 limit of the rank-r embedding is the
classical unnormalized spectral clustering embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import flow, harmonic, spectra
from .graph import Cut, Graph, GraphError, connected_components, require_connected


@dataclass(frozen=True)
class Clustering:
    assignment: np.ndarray  # vertex -> cluster id in 0..c-1
    c: int
    provenance: dict = field(compare=False)

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64)
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)


def lloyd_iterations(points, c, seed, max_iters=300):
    """Generator of (assignment, inertia) per Lloyd iteration.

    Centroids start at c distinct points chosen uniformly at random.
    Empty clusters are reseeded to the point farthest from its centroid.
    """
    pts = np.asarray(points, dtype=np.float64)
    n, d = pts.shape
    if c > n:
        raise GraphError(f"cannot form c={c} clusters from {n} points")
    if c < 1 or d == 0:
        raise GraphError("need c >= 1 clusters and at least one coordinate")
    rng = np.random.default_rng(seed)
    centroids = pts[rng.choice(n, size=c, replace=False)].copy()
    prev = None
    for _ in range(max_iters):
        d2 = np.sum((pts[:, None, :] - centroids[None, :, :]) ** 2, axis=-1)
        assign = np.argmin(d2, axis=1)
        dist_to_own = d2[np.arange(n), assign]
        for cid in range(c):
            if not np.any(assign == cid):
                far = int(np.argmax(dist_to_own))
                assign[far] = cid
                dist_to_own[far] = 0.0
        inertia = 0.0
        for cid in range(c):
            members = pts[assign == cid]
            centroids[cid] = members.mean(axis=0)
            inertia += float(np.sum((members - centroids[cid]) ** 2))
        yield assign.copy(), inertia
        if prev is not None and np.array_equal(assign, prev):
            return
        prev = assign


def kmeans(points, c: int, seed: int, max_iters: int = 300):
    """Lloyd's algorithm; returns (Clustering, final inertia)."""
    assign, inertia = None, float("inf")
    for assign, inertia in lloyd_iterations(points, c, seed, max_iters):
        pass
    clustering = Clustering(
        assign, c, {"algorithm": "kmeans", "params": {"max_iters": max_iters}, "seed": seed}
    )
    return clustering, inertia


def kharmonic_kmeans(g: Graph, c: int, k: float, seed: int, dec=None) -> Clustering:
    """k-means over the full-rank k-harmonic embedding (k=2: biharmonic)."""
    dec = harmonic._connected_dec(g, dec)
    pts = spectra.embedding(dec, k)
    clustering, _ = kmeans(pts, c, seed)
    return Clustering(
        clustering.assignment,
        c,
        {"algorithm": "kharmonic_kmeans", "params": {"k": k}, "seed": seed},
    )


def low_rank_kharmonic_kmeans(
    g: Graph, c: int, k: float, r: int | None = None, seed: int = 0, dec=None
) -> Clustering:
    """k-means over the rank-r k-harmonic embedding; r defaults to c."""
    dec = harmonic._connected_dec(g, dec)
    r = c if r is None else r
    pts = spectra.embedding(dec, k, r)
    clustering, _ = kmeans(pts, c, seed)
    return Clustering(
        clustering.assignment,
        c,
        {"algorithm": "low_rank_kharmonic_kmeans", "params": {"k": k, "r": r}, "seed": seed},
    )


def spectral_clustering(g: Graph, c: int, seed: int, dec=None) -> Clustering:
    """Unnormalized spectral clustering.

    Embeds with the eigenvectors of the c smallest strictly positive
    eigenvalues, unweighted; this is the k -> 0 limit of the rank-c
    k-harmonic embedding.
    """
    if c >= g.n:
        raise GraphError(f"spectral clustering needs c < n, got c={c}, n={g.n}")
    dec = harmonic._connected_dec(g, dec)
    pts = spectra.embedding(dec, 0.0, c)
    clustering, _ = kmeans(pts, c, seed)
    return Clustering(
        clustering.assignment, c, {"algorithm": "spectral", "params": {}, "seed": seed}
    )


GN_MEASURES = ("biharmonic2", "kharmonic2", "betweenness")


def girvan_newman(g: Graph, c: int, measure: str = "biharmonic2", k: float = 2.0) -> Clustering:
    """Delete the globally maximal edge until >= c components remain.

    The edge measure is recomputed after every deletion; distance measures
    are evaluated within each current connected component.  Ties break
    toward the lowest edge index, so the algorithm is deterministic.
    """
    if c > g.n:
        raise GraphError(f"cannot form c={c} clusters on {g.n} vertices")
    if measure not in GN_MEASURES:
        raise GraphError(f"unknown GN measure {measure!r}; choose from {GN_MEASURES}")
    if measure == "biharmonic2":
        k = 2.0
    work = g
    while len(connected_components(work)) < c and work.m > 0:
        if measure == "betweenness":
            vals = _componentwise_betweenness(work)
        else:
            vals = harmonic.kharmonic_component_edge_sq(work, k).values
        e_max = int(np.lexsort((np.arange(len(vals)), -vals))[0])
        work = work.without_edge(e_max)
    comps = connected_components(work)
    assignment = np.empty(g.n, dtype=np.int64)
    for cid, comp in enumerate(comps):
        for v in comp:
            assignment[v] = cid
    return Clustering(
        assignment,
        len(comps),
        {"algorithm": f"girvan_newman[{measure}]", "params": {"k": k, "c": c}, "seed": None},
    )


def _componentwise_betweenness(g: Graph) -> np.ndarray:
    vals = np.zeros(g.m)
    for comp in connected_components(g):
        verts = sorted(comp)
        index = {v: i for i, v in enumerate(verts)}
        edge_ids = [e for e, (u, v, _) in enumerate(g.edges) if u in comp]
        if not edge_ids:
            continue
        sub = Graph(
            len(verts),
            tuple(
                (index[g.edges[e][0]], index[g.edges[e][1]], g.edges[e][2])
                for e in edge_ids
            ),
        )
        sub_scores = flow.edge_betweenness(sub).values
        for local, e in enumerate(edge_ids):
            vals[e] = sub_scores[local]
    return vals


def sweep_cut(g: Graph, x) -> Cut:
    """Best superlevel-set cut of a vertex vector by isoperimetric ratio.

    S = {v : x(v) >= t} over all distinct thresholds; ties prefer larger
    |S|, then smaller threshold.
    """
    from .graph import cut_from_side

    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise GraphError(f"vector length {x.shape} does not match n={g.n}")
    # merge levels that differ only by float noise (exactly equal potentials
    # on hanging subtrees otherwise split across thresholds)
    span = np.ptp(x)
    if span > 0:
        x = np.round(x / span, 9) * span
    levels = np.unique(x)
    if len(levels) < 2:
        raise GraphError("sweep vector is constant")
    best: Cut | None = None
    for t in levels[1:]:  # threshold at the minimum would select all of V
        cut = cut_from_side(g, np.nonzero(x >= t)[0])
        if (
            best is None
            or cut.ratio < best.ratio
            or (cut.ratio == best.ratio and len(cut.side) > len(best.side))
        ):
            best = cut
    return best


def purity(pred: Clustering, truth) -> float:
    """Fraction of vertices matching their cluster's majority true label."""
    truth = np.asarray(truth)
    assign = np.asarray(getattr(pred, "assignment", pred))
    if len(truth) != len(assign):
        raise GraphError(
            f"assignment length {len(assign)} != label length {len(truth)}"
        )
    total = 0
    for cid in np.unique(assign):
        labels, counts = np.unique(truth[assign == cid], return_counts=True)
        total += int(counts.max())
    return total / len(truth)
