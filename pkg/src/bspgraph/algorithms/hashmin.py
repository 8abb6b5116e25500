"""Hash-Min connected components: every vertex ends with the smallest id in its component."""
from __future__ import annotations

from ..engine import VertexProgram
from ..graph import format_vertex_id


class HashMin(VertexProgram):
    name = "hashmin"

    def combine(self, a, b):
        return a if a < b else b

    def compute(self, v, messages, ctx):
        if ctx.superstep == 1:
            v.value = v.id
            ctx.broadcast(v.id)
        elif messages:
            m = min(messages)
            if m < v.value:
                v.value = m
                ctx.broadcast(m)
        ctx.vote_to_halt()

    def format_value(self, value):
        return format_vertex_id(value)

    def summary(self, values, supersteps):
        return {"components": len(set(values.values()))}
