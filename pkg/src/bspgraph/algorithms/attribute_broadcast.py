"""Attribute broadcast: decorate every out-neighbour ``u`` of ``v`` with ``a(u)``."""
from __future__ import annotations

from ..engine import VertexProgram
from ..graph import _mix64, format_vertex_id, pair_hash


def default_attribute(vid) -> int:
    """Deterministic 32-bit attribute derived from the id."""
    if isinstance(vid, tuple):
        return pair_hash(vid) & 0xFFFFFFFF
    return _mix64(vid & 0xFFFFFFFFFFFFFFFF) & 0xFFFFFFFF


class _AttributeBroadcast(VertexProgram):
    name = "attrbcast"

    def __init__(self, attribute=default_attribute):
        self.attribute = attribute

    def init_value(self, vid):
        return []

    def respond(self, v, ctx):
        return self.attribute(v.id)

    def format_value(self, value):
        return ",".join(f"{format_vertex_id(u)}:{a}" for u, a in value) or "-"


class AttributeBroadcastMsg(_AttributeBroadcast):
    """Three supersteps over plain messages: ask, answer, collect."""

    def compute(self, v, messages, ctx):
        s = ctx.superstep
        if s == 1:
            for u in v.nbrs:
                ctx.send_msg(u, v.id)
        elif s == 2:
            a = self.attribute(v.id)
            for requester in messages:
                ctx.send_msg(requester, (v.id, a))
        elif s == 3:
            got = dict(messages)
            v.value = [(u, got[u]) for u in v.nbrs]
        ctx.vote_to_halt()


class AttributeBroadcastReq(_AttributeBroadcast):
    """Two supersteps with implicit responding: request, then read the table."""

    def compute(self, v, messages, ctx):
        if ctx.superstep == 1:
            for u in v.nbrs:
                ctx.request(u)
            if v.nbrs:
                return
        else:
            v.value = [(u, ctx.get_resp(u)) for u in v.nbrs]
        ctx.vote_to_halt()


class AttributeBroadcastPush(_AttributeBroadcast):
    """Undirected graphs only: each vertex pushes its attribute by explicit responding."""

    def prepare(self, graph):
        if graph.directed:
            raise ValueError("push-style attribute broadcast needs an undirected graph")

    def compute(self, v, messages, ctx):
        if ctx.superstep == 1:
            for u in v.nbrs:
                ctx.respond_to(u)
            if v.nbrs:
                return
        else:
            v.value = [(u, ctx.get_resp(u)) for u in v.nbrs]
        ctx.vote_to_halt()
