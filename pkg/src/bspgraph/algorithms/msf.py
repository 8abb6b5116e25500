"""Minimum spanning forest by supervertex merging, with edges kept at subvertices.

Each vertex keeps its own incident edges that still leave its component;
nothing is ever shipped to the supervertex except one min-combined candidate
per subvertex per round. A round:

    clean       drop edges whose far end has the same supervertex (read via
                request/respond), send the local minimum to the supervertex
    pick        supervertices take the minimum candidate and point at the
                supervertex on the other side
    cycle       picks form trees joined by a 2-cycle; the smaller cycle vertex
                becomes the new root, every other picker records its edge
    jump        supervertices pointer-jump until every pointer is a root
    relabel     subvertices read their old supervertex's final pointer and
                request their neighbours' pointers for the next clean

Edges are ranked by ``(weight, min endpoint, max endpoint)``, a strict total
order on distinct edges, so the forest is unique.
"""
from __future__ import annotations

from ..engine import VertexProgram, or_aggregator, sum_aggregator
from ..graph import format_vertex_id


def edge_rank(a, b, w):
    return (w, a, b) if a <= b else (w, b, a)


class MSFState:
    __slots__ = ("D", "edges", "phase", "super", "picked", "msf")

    def __init__(self, d):
        self.D = d
        self.edges = None  # [(rank, neighbour)], cross-component only after cleaning
        self.phase = "clean_req"
        self.super = True
        self.picked = None
        self.msf = []

    def __repr__(self):
        return f"MSFState(D={self.D!r}, phase={self.phase}, msf={self.msf!r})"


class MinimumSpanningForest(VertexProgram):
    name = "msf"

    def combine(self, a, b):
        return a if a < b else b

    def prepare(self, graph):
        if graph.directed:
            raise ValueError("MSF needs an undirected graph")
        if not graph.weighted:
            raise ValueError("MSF needs a weighted graph")

    def init_value(self, vid):
        return MSFState(vid)

    def aggregators(self):
        return {"picked": sum_aggregator(), "jumped": or_aggregator()}

    def respond(self, v, ctx):
        return v.value.D

    def output(self, v):
        return sorted(v.value.msf)

    def format_value(self, value):
        if not value:
            return "-"
        return ",".join(f"{format_vertex_id(a)}-{format_vertex_id(b)}:{w!r}"
                        for w, a, b in value)

    def summary(self, values, supersteps):
        edges = [e for es in values.values() for e in es]
        return {"msf_edges": len(edges), "total_weight": sum(e[0] for e in edges)}

    def _request_neighbours(self, v, ctx):
        for _, u in v.value.edges:
            ctx.request(u)

    def compute(self, v, messages, ctx):
        st = v.value
        if st.edges is None:
            st.edges = [(edge_rank(v.id, u, w), u) for u, w in v.edges() if u != v.id]

        phase = st.phase
        if phase == "jump" and not ctx.read_aggregate("jumped"):
            phase = "relabel_req"

        if phase == "clean_req":
            self._request_neighbours(v, ctx)
            st.phase = "clean"
        elif phase == "clean":
            d = st.D
            kept = [(r, u) for r, u in st.edges if ctx.get_resp(u) != d]
            st.edges = kept
            if kept:
                r, u = min(kept)
                ctx.send_msg(d, (r, ctx.get_resp(u)))
            st.phase = "pick"
        elif phase == "pick":
            st.super = st.D == v.id
            st.picked = None
            if st.super and messages:
                rank, target = min(messages)
                st.picked = rank
                st.D = target
                ctx.aggregate("picked", 1)
                ctx.request(target)
            st.phase = "cycle"
        elif phase == "cycle":
            if ctx.read_aggregate("picked") == 0:
                st.phase = "done"
                ctx.vote_to_halt()
                return
            if st.picked is not None:
                if ctx.get_resp(st.D) == v.id and v.id < st.D:
                    st.D = v.id
                else:
                    st.msf.append(st.picked)
                ctx.aggregate("jumped", True)
            if st.super:
                ctx.request(st.D)
            st.phase = "jump"
        elif phase == "jump":
            if st.super:
                nd = ctx.get_resp(st.D)
                if nd != st.D:
                    st.D = nd
                    ctx.aggregate("jumped", True)
                ctx.request(st.D)
        elif phase == "relabel_req":
            if not st.super:
                ctx.request(st.D)
            st.phase = "relabel"
        elif phase == "relabel":
            if not st.super:
                st.D = ctx.get_resp(st.D)
            # responses are built after this superstep, so neighbours' new D is visible
            self._request_neighbours(v, ctx)
            st.phase = "clean"
