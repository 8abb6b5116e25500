"""Seeded synthetic graph generators used as fixtures and by ``bspgraph gen``."""
from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import Graph


def _finish(n: int, src: np.ndarray, dst: np.ndarray, directed: bool,
            weights: Optional[np.ndarray] = None) -> Graph:
    g = Graph(directed=directed, weighted=weights is not None)
    for v in range(n):
        g.add_vertex(v)
    if weights is None:
        for u, v in zip(src.tolist(), dst.tolist()):
            g.add_edge(u, v)
    else:
        for u, v, w in zip(src.tolist(), dst.tolist(), weights.tolist()):
            g.add_edge(u, v, w)
    return g


def _dedupe(src: np.ndarray, dst: np.ndarray, directed: bool):
    keep = src != dst
    src, dst = src[keep], dst[keep]
    if directed:
        a, b = src, dst
    else:
        a, b = np.minimum(src, dst), np.maximum(src, dst)
    pairs = np.unique(np.stack([a, b], axis=1), axis=0)
    return pairs[:, 0], pairs[:, 1]


def random_graph(n: int, deg_avg: float, seed: int = 0, directed: bool = False,
                 connected: bool = False, weighted: bool = False,
                 max_weight: int = 1000) -> Graph:
    """Random graph with uniformly chosen endpoints.

    ``deg_avg`` is the target number of adjacency entries per vertex, so an
    undirected graph gets about ``n * deg_avg / 2`` edges. Duplicates and
    self-loops are dropped. With ``connected=True`` a random recursive tree
    over a random relabelling is added first. Integer weights are drawn from
    ``[1, max_weight]``.
    """
    rng = np.random.default_rng(seed)
    m = int(round(n * deg_avg if directed else n * deg_avg / 2))
    src = rng.integers(0, n, size=m) if n else np.zeros(0, dtype=np.int64)
    dst = rng.integers(0, n, size=m) if n else np.zeros(0, dtype=np.int64)
    if connected and n > 1:
        perm = rng.permutation(n)
        child = np.arange(1, n)
        parent = (rng.random(n - 1) * child).astype(np.int64)
        src = np.concatenate([perm[child], src])
        dst = np.concatenate([perm[parent], dst])
    src, dst = _dedupe(src, dst, directed)
    w = rng.integers(1, max_weight + 1, size=len(src)).astype(float) if weighted else None
    return _finish(n, src, dst, directed, w)


def powerlaw_graph(n: int, max_degree: int, exponent: float = 1.0, min_degree: int = 2,
                   seed: int = 0, directed: bool = False) -> Graph:
    """Skewed-degree graph: the vertex of rank ``r`` picks
    ``max(min_degree, max_degree * (r + 1) ** -exponent)`` distinct random
    out-neighbours. Ranks are assigned to ids by a random permutation, so
    hubs land on arbitrary workers.
    """
    rng = np.random.default_rng(seed)
    ranks = np.arange(n)
    want = np.maximum(min_degree, np.floor(max_degree * (ranks + 1.0) ** -exponent)).astype(np.int64)
    want = np.minimum(want, n - 1)
    ids = rng.permutation(n)
    srcs, dsts = [], []
    for r in range(n):
        k = int(want[r])
        if k <= 0:
            continue
        u = ids[r]
        if k > 32:
            nb = rng.choice(n - 1, size=k, replace=False)
        else:
            nb = np.unique(rng.integers(0, n - 1, size=k))
        nb = nb + (nb >= u)  # skip self
        srcs.append(np.full(len(nb), u))
        dsts.append(nb)
    src = np.concatenate(srcs) if srcs else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dsts) if dsts else np.zeros(0, dtype=np.int64)
    src, dst = _dedupe(src, dst, directed)
    return _finish(n, src, dst, directed)


def star_graph(leaves: int, directed: bool = False) -> Graph:
    """Centre 0 joined to leaves ``1..leaves``."""
    g = Graph(directed=directed)
    g.add_vertex(0)
    for v in range(1, leaves + 1):
        g.add_edge(0, v)
    return g


def path_graph(n: int, directed: bool = False, start: int = 0) -> Graph:
    g = Graph(directed=directed)
    for v in range(start, start + n):
        g.add_vertex(v)
    for v in range(start, start + n - 1):
        g.add_edge(v, v + 1)
    return g


def ring_graph(n: int, directed: bool = False) -> Graph:
    g = path_graph(n, directed)
    if n > 2:
        g.add_edge(n - 1, 0)
    return g


def complete_bipartite(a: int, b: int, directed: bool = True) -> Graph:
    """Left vertices ``0..a-1`` each linked to every right vertex ``a..a+b-1``."""
    g = Graph(directed=directed)
    for v in range(a + b):
        g.add_vertex(v)
    for u in range(a):
        for v in range(a, a + b):
            g.add_edge(u, v)
    return g
