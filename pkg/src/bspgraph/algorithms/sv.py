"""Shiloach-Vishkin connected components over parent pointers ``D``.

A round is tree hooking, star detection, star hooking and shortcutting.
Hooking only ever points a root at a smaller id, so ``D[v] <= v`` holds
throughout, roots are the minima of their trees, and on termination every
vertex points at the smallest id of its component.

Pointer reads (``D[D[v]]`` and the star flag of the parent) are where the
bottleneck lives: near the end most of a component points at one root. With
``reqresp=True`` they go through the request/respond channel; otherwise each
read costs an explicit question and answer over plain messages and an extra
superstep.

Supersteps of one round with request/respond (``p`` = position in round):

    0 bcast      halt if the previous round changed nothing; send D to
                 neighbours (min-combined); request D[D]
    1 tree_hook  if D is a root and the smallest neighbour pointer is below
                 it, propose that pointer to the root
    2 hooked     roots take the smallest proposal; request D[D]
    3 mark       depth >= 2 vertices clear their own and their grandparent's
                 star flag
    4 unmark     apply flags; request the parent's flag
    5 star_bcast star &= parent's star; send D to neighbours
    6 star_hook  star members propose the smallest neighbour pointer to
                 their root when it is below the root
    7 hooked2    roots take the smallest proposal; request D[D]
    8 shortcut   D = D[D]; report whether anything changed this round
"""
from __future__ import annotations

from ..engine import VertexProgram, or_aggregator
from ..graph import format_vertex_id

PHASES = ("bcast", "tree_hook", "hooked", "mark", "unmark", "star_bcast",
          "star_hook", "hooked2", "shortcut")
FETCHING = frozenset({"bcast", "hooked", "unmark", "hooked2"})


def schedule(reqresp: bool) -> tuple:
    if reqresp:
        return PHASES
    out = []
    for p in PHASES:
        out.append(p)
        if p in FETCHING:
            out.append("serve")
    return tuple(out)


class SVState:
    __slots__ = ("D", "star", "changed", "stash")

    def __init__(self, d):
        self.D = d
        self.star = True
        self.changed = False
        self.stash = []

    def __repr__(self):
        return f"SVState(D={self.D!r}, star={self.star})"


class ShiloachVishkin(VertexProgram):
    name = "sv"

    def __init__(self, reqresp: bool = True):
        self.reqresp = reqresp
        self.phases = schedule(reqresp)
        if not reqresp:
            # questions carry the asker's id and cannot be merged
            self.combine = None

    def combine(self, a, b):
        return a if a < b else b

    def prepare(self, graph):
        if graph.directed:
            raise ValueError("S-V needs an undirected graph")

    def init_value(self, vid):
        return SVState(vid)

    def aggregators(self):
        return {"changed": or_aggregator()}

    def respond(self, v, ctx):
        st = v.value
        return (st.D, st.star)

    def output(self, v):
        return v.value.D

    def format_value(self, value):
        return format_vertex_id(value)

    def rounds(self, supersteps: int) -> int:
        """Rounds executed, given the run's superstep count (last one only halts)."""
        return (supersteps - 1) // len(self.phases)

    def summary(self, values, supersteps):
        rounds = self.rounds(supersteps)
        # the last executed round only confirms that nothing changes
        return {"components": len(set(values.values())), "rounds": rounds,
                "converged_round": max(rounds - 1, 0)}

    # -- helpers hiding the channel used for pointer reads --

    def _fetch(self, ctx, v, u):
        if self.reqresp:
            ctx.request(u)
        else:
            ctx.send_msg(u, ("q", v.id))

    def _fetched(self, ctx, msgs, u):
        if self.reqresp:
            return ctx.get_resp(u)
        for m in msgs:
            if m[0] == "r":
                return m[1], m[2]
        raise RuntimeError(f"missing answer from {u!r}")

    def _vals(self, msgs, tag):
        if self.reqresp:
            return msgs
        return [m[1] for m in msgs if m[0] == tag]

    def _send(self, ctx, tgt, tag, val):
        ctx.send_msg(tgt, val if self.reqresp else (tag, val))

    def _bcast(self, ctx, val):
        ctx.broadcast(val if self.reqresp else ("d", val))

    def compute(self, v, messages, ctx):
        st = v.value
        phase = self.phases[(ctx.superstep - 1) % len(self.phases)]

        if phase == "serve":
            for m in messages:
                if m[0] == "q":
                    ctx.send_msg(m[1], ("r", st.D, st.star))
                else:
                    st.stash.append(m)
            return
        if st.stash:
            messages = st.stash + messages
            st.stash = []

        if phase == "bcast":
            if ctx.superstep > 1 and not ctx.read_aggregate("changed"):
                ctx.vote_to_halt()
                return
            st.changed = False
            self._bcast(ctx, st.D)
            self._fetch(ctx, v, st.D)
        elif phase == "tree_hook":
            gp = self._fetched(ctx, messages, st.D)[0]
            nbr = self._vals(messages, "d")
            if nbr and gp == st.D:
                m = min(nbr)
                if m < st.D:
                    self._send(ctx, st.D, "h", m)
        elif phase in ("hooked", "hooked2"):
            props = self._vals(messages, "h")
            if props:
                m = min(props)
                if m < st.D:
                    st.D = m
                    st.changed = True
            self._fetch(ctx, v, st.D)
        elif phase == "mark":
            gp = self._fetched(ctx, messages, st.D)[0]
            st.star = True
            if gp != st.D:
                st.star = False
                self._send(ctx, gp, "n", 0)
        elif phase == "unmark":
            if self._vals(messages, "n"):
                st.star = False
            self._fetch(ctx, v, st.D)
        elif phase == "star_bcast":
            st.star = st.star and self._fetched(ctx, messages, st.D)[1]
            self._bcast(ctx, st.D)
        elif phase == "star_hook":
            nbr = self._vals(messages, "d")
            if st.star and nbr:
                m = min(nbr)
                if m < st.D:
                    self._send(ctx, st.D, "h", m)
        elif phase == "shortcut":
            gp = self._fetched(ctx, messages, st.D)[0]
            if gp != st.D:
                st.D = gp
                st.changed = True
            ctx.aggregate("changed", st.changed)
