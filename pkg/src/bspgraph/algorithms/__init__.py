"""Vertex programs and a name-based factory used by the CLI and the scripts."""
from __future__ import annotations

from .attribute_broadcast import (AttributeBroadcastMsg, AttributeBroadcastPush,
                                  AttributeBroadcastReq, default_attribute)
from .hashmin import HashMin
from .msf import MinimumSpanningForest, edge_rank
from .pagerank import PageRank, PageRankPush
from .sssp import SSSP
from .sv import ShiloachVishkin

ALGORITHMS = ("attrbcast", "pagerank", "pagerank_push", "hashmin", "sv", "sssp", "msf")
# programs whose traffic goes through broadcast(), so mirroring applies
BROADCASTING = frozenset({"pagerank", "hashmin", "sv", "sssp"})


def make_program(name: str, reqresp: bool = True, source=None, epsilon: float = 0.01,
                 iterations=None):
    """Build a fresh program by name.

    ``reqresp`` picks the request/respond variant where both exist.
    """
    if name == "attrbcast":
        return AttributeBroadcastReq() if reqresp else AttributeBroadcastMsg()
    if name == "pagerank":
        return PageRank(epsilon, iterations)
    if name == "pagerank_push":
        return PageRankPush(epsilon, iterations)
    if name == "hashmin":
        return HashMin()
    if name == "sv":
        return ShiloachVishkin(reqresp=reqresp)
    if name == "sssp":
        if source is None:
            raise ValueError("sssp needs a source vertex")
        return SSSP(source)
    if name == "msf":
        if not reqresp:
            raise ValueError("msf is only implemented with request/respond")
        return MinimumSpanningForest()
    raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")


__all__ = [
    "ALGORITHMS", "BROADCASTING", "make_program", "AttributeBroadcastMsg",
    "AttributeBroadcastReq", "AttributeBroadcastPush", "default_attribute", "HashMin",
    "MinimumSpanningForest", "edge_rank", "PageRank", "PageRankPush", "SSSP",
    "ShiloachVishkin",
]
