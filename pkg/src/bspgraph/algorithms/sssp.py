"""Single-source shortest paths with edge lengths applied by ``relay``."""
from __future__ import annotations

from ..engine import VertexProgram

# final value of vertices the source cannot reach
UNREACHED = None


class SSSP(VertexProgram):
    """Each improved vertex broadcasts its distance; relay adds the edge length.

    Under mirroring the relay runs on the receiving worker, so the same
    program works whichever channel a broadcast takes.
    """

    name = "sssp"

    def __init__(self, source):
        self.source = source

    def prepare(self, graph):
        if not graph.weighted:
            raise ValueError("sssp needs a weighted graph")
        if self.source not in graph.adj:
            raise ValueError(f"source vertex {self.source!r} not in graph")
        for v, ws in graph.weights.items():
            for w in ws:
                if w < 0:
                    raise ValueError(f"negative edge length {w} at vertex {v!r}")

    def combine(self, a, b):
        return a if a < b else b

    def relay(self, edge, msg):
        return msg + edge.weight

    def compute(self, v, messages, ctx):
        if ctx.superstep == 1:
            if v.id == self.source:
                v.value = 0.0
                ctx.broadcast(0.0)
        elif messages:
            m = min(messages)
            if v.value is UNREACHED or m < v.value:
                v.value = m
                ctx.broadcast(m)
        ctx.vote_to_halt()

    def format_value(self, value):
        return "inf" if value is UNREACHED else repr(value)

    def summary(self, values, supersteps):
        return {"reached": sum(1 for d in values.values() if d is not UNREACHED)}
