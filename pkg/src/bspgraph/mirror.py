"""Ch_mir: mirrors of high-degree vertices and the degree threshold that selects them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import Graph


def compute_threshold(num_workers: int, deg_avg: float) -> float:
    """Cost-model mirroring threshold ``M * exp(deg_avg / M)``.

    Below it, a vertex's messages are expected to be mostly absorbed by the
    sender-side combiner anyway; at or above it, one message per mirror is
    cheaper.
    """
    if num_workers < 1:
        raise ValueError(f"worker count must be >= 1, got {num_workers}")
    if deg_avg < 0:
        raise ValueError(f"average degree must be >= 0, got {deg_avg}")
    return num_workers * math.exp(deg_avg / num_workers)


@dataclass
class MirrorTables:
    """Mirror layout produced before superstep 1.

    ``tables[i][v]`` is ``N_i``: v's neighbours resident on worker ``i`` as
    ``(target, weight)`` pairs in adjacency order. The home worker keeps its
    own local list in the same table, so a broadcast is uniformly "one entry
    per holding worker"; only non-home entries cost a network message.
    ``holders[v]`` is the sorted tuple of workers holding a list for ``v``.
    """

    tau: float
    tables: list
    holders: dict = field(default_factory=dict)
    construction_messages: int = 0
    construction_entries: int = 0

    @property
    def mirrored(self) -> set:
        return set(self.holders)

    def preproc(self) -> dict:
        return {"mirrors": self.construction_messages, "entries": self.construction_entries}


def build_mirrors(graph: Graph, tau: float, num_workers: int, part) -> MirrorTables:
    """Group the adjacency of every vertex with ``degree >= tau`` by resident worker."""
    if tau < 0:
        raise ValueError(f"mirror threshold must be >= 0, got {tau}")
    tables = [dict() for _ in range(num_workers)]
    mt = MirrorTables(tau=tau, tables=tables)
    if math.isinf(tau):
        return mt
    for v in graph.vertices():
        nbrs = graph.adj[v]
        if len(nbrs) < tau or not nbrs:
            continue
        ws = graph.weights[v] if graph.weighted else None
        groups = {}
        for k, u in enumerate(nbrs):
            groups.setdefault(part(u), []).append((u, ws[k] if ws is not None else None))
        home = part(v)
        for i, n_i in groups.items():
            tables[i][v] = n_i
            if i != home:
                mt.construction_messages += 1
                mt.construction_entries += len(n_i)
        mt.holders[v] = tuple(sorted(groups))
    return mt


def per_vertex_send_bound_check(sends: int, degree: int, num_workers: int) -> bool:
    """True iff a vertex's broadcast cost ``sends <= min(M, d(v))`` network messages."""
    return sends <= min(num_workers, degree)
