"""Graph representation, vertex ids, hash partitioning and edge-list I/O.

Vertex ids are either plain ints or ``(int, int)`` pairs. Both kinds are
hashable and totally ordered within their kind; a single graph never mixes
them.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Union

VertexId = Union[int, "tuple[int, int]"]

_MASK64 = (1 << 64) - 1


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input."""


class Edge(NamedTuple):
    target: VertexId
    weight: Optional[float] = None


def _mix64(x: int) -> int:
    # splitmix64 finalizer
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def pair_hash(vid: "tuple[int, int]") -> int:
    a, b = vid
    return _mix64((_mix64(a & _MASK64) ^ (b & _MASK64)) & _MASK64)


def partition(vid: VertexId, num_workers: int) -> int:
    """Worker index owning ``vid``: ``id mod M`` for ints, mixed hash for pairs."""
    if num_workers < 1:
        raise ValueError(f"worker count must be >= 1, got {num_workers}")
    if isinstance(vid, tuple):
        return pair_hash(vid) % num_workers
    return vid % num_workers


@dataclass
class Graph:
    """Adjacency-list graph.

    ``adj[v]`` keeps load order. For undirected graphs every edge is stored
    in both endpoint lists. ``weights[v]`` is parallel to ``adj[v]`` and is
    ``None`` for unweighted graphs.
    """

    directed: bool = True
    weighted: bool = False
    adj: dict = field(default_factory=dict)
    weights: Optional[dict] = None

    def __post_init__(self):
        if self.weighted and self.weights is None:
            self.weights = {v: [] for v in self.adj}

    @property
    def num_vertices(self) -> int:
        return len(self.adj)

    @property
    def num_entries(self) -> int:
        """Directed adjacency entries (each undirected edge counts twice)."""
        return sum(len(a) for a in self.adj.values())

    def vertices(self) -> list:
        return sorted(self.adj)

    def degree(self, v: VertexId) -> int:
        return len(self.adj[v])

    def add_vertex(self, v: VertexId) -> None:
        if v not in self.adj:
            self.adj[v] = []
            if self.weighted:
                self.weights[v] = []

    def add_edge(self, u: VertexId, v: VertexId, weight: Optional[float] = None) -> None:
        if self.weighted and weight is None:
            raise ValueError("weighted graph requires an edge weight")
        self.add_vertex(u)
        self.add_vertex(v)
        self.adj[u].append(v)
        if self.weighted:
            self.weights[u].append(float(weight))
        if not self.directed:
            self.adj[v].append(u)
            if self.weighted:
                self.weights[v].append(float(weight))

    def edges_of(self, v: VertexId) -> list:
        ws = self.weights[v] if self.weighted else None
        if ws is None:
            return [Edge(u) for u in self.adj[v]]
        return [Edge(u, w) for u, w in zip(self.adj[v], ws)]

    def undirected_edges(self) -> Iterable:
        """Each undirected edge once as ``(u, v, w)`` with ``u <= v`` (load order kept)."""
        if self.directed:
            raise ValueError("graph is directed")
        # every edge appears in both lists; emit from the smaller endpoint,
        # self-loops appear twice in one list so halve them
        for u in self.vertices():
            ws = self.weights[u] if self.weighted else None
            loops = 0
            for i, v in enumerate(self.adj[u]):
                w = ws[i] if ws is not None else None
                if u < v:
                    yield (u, v, w)
                elif u == v:
                    loops += 1
                    if loops % 2:
                        yield (u, v, w)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.directed == other.directed and self.weighted == other.weighted
                and self.adj == other.adj and (self.weights or {}) == (other.weights or {}))


def parse_vertex_id(token: str, id_type: str = "int") -> VertexId:
    if id_type == "int":
        return int(token)
    if id_type == "pair":
        a, sep, b = token.partition(":")
        if not sep:
            raise ValueError(f"pair id must look like 'a:b', got {token!r}")
        return (int(a), int(b))
    raise ValueError(f"unknown id type {id_type!r}")


def format_vertex_id(vid: VertexId) -> str:
    if isinstance(vid, tuple):
        return f"{vid[0]}:{vid[1]}"
    return str(vid)


def load_edge_list(path: Union[str, os.PathLike], directed: bool = True,
                   weighted: bool = False, id_type: str = "int") -> Graph:
    """Read a whitespace-separated ``src dst [weight]`` file.

    Blank lines and ``#`` comments are skipped. A line with a single token
    declares an isolated vertex.
    """
    g = Graph(directed=directed, weighted=weighted)
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if len(parts) == 1:
                    g.add_vertex(parse_vertex_id(parts[0], id_type))
                    continue
                if len(parts) == 2:
                    if weighted:
                        raise GraphFormatError(f"line {lineno}: missing weight")
                    g.add_edge(parse_vertex_id(parts[0], id_type),
                               parse_vertex_id(parts[1], id_type))
                elif len(parts) == 3:
                    if not weighted:
                        raise GraphFormatError(
                            f"line {lineno}: weight given but graph is unweighted")
                    g.add_edge(parse_vertex_id(parts[0], id_type),
                               parse_vertex_id(parts[1], id_type), float(parts[2]))
                else:
                    raise GraphFormatError(f"line {lineno}: expected 'src dst [weight]'")
            except GraphFormatError:
                raise
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: {exc}") from None
    return g


def write_edge_list(g: Graph, path: Union[str, os.PathLike]) -> None:
    """Write ``g`` in the format read by :func:`load_edge_list`."""
    with open(path, "w") as fh:
        if g.directed:
            rows = ((u, v, (g.weights[u][i] if g.weighted else None))
                    for u in g.vertices() for i, v in enumerate(g.adj[u]))
        else:
            rows = g.undirected_edges()
        linked = set()
        for u, v, w in rows:
            linked.add(u)
            linked.add(v)
            if w is None:
                fh.write(f"{format_vertex_id(u)} {format_vertex_id(v)}\n")
            else:
                fh.write(f"{format_vertex_id(u)} {format_vertex_id(v)} {w!r}\n")
        for v in g.vertices():
            if v not in linked:
                fh.write(f"{format_vertex_id(v)}\n")


def degree_stats(g: Graph) -> "tuple[int, int, float, int]":
    """``(n, m, deg_avg, deg_max)`` with ``m`` counted as adjacency entries."""
    n = g.num_vertices
    if n == 0:
        raise ValueError("degree statistics undefined for an empty graph")
    degs = [len(a) for a in g.adj.values()]
    m = sum(degs)
    return n, m, m / n, max(degs)
