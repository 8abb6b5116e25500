"""PageRank with sender-side sum combining and an all-converged aggregator.

Contributions travel as exact fixed-point integers scaled by 2**1074, the
smallest float spacing, so summation is exact and order-free: the folded
sum is the same whether messages are combined at the sender, forwarded by
mirrors, shuffled, or split across any number of workers. Converting back
rounds once, which equals ``math.fsum`` of the float contributions.
"""
from __future__ import annotations

from ..engine import VertexProgram, and_aggregator

SHIFT = 1074
_ONE = 1 << SHIFT


def to_fixed(x: float) -> int:
    num, den = x.as_integer_ratio()
    return num << (SHIFT - den.bit_length() + 1)


def from_fixed(n: int) -> float:
    return n / _ONE


class PageRank(VertexProgram):
    """``pr = 0.15/|V| + 0.85 * sum(in-contributions)``.

    Superstep 1 sets ``pr = 1/|V|``. From superstep 2 on every vertex
    reports whether its value moved by less than ``epsilon``; once all did,
    everyone halts in the following superstep. ``max_supersteps`` caps the
    run for fixed-length experiments. Mass on dangling vertices is dropped.
    """

    name = "pagerank"

    def __init__(self, epsilon: float = 0.01, max_supersteps=None):
        self.epsilon = epsilon
        self.max_supersteps = max_supersteps

    def combine(self, a, b):
        return a + b

    def aggregators(self):
        return {"converged": and_aggregator()}

    def compute(self, v, messages, ctx):
        s = ctx.superstep
        n = ctx.num_vertices
        if s == 1:
            v.value = 1.0 / n
        else:
            if s >= 3 and ctx.read_aggregate("converged"):
                ctx.vote_to_halt()
                return
            total = from_fixed(sum(messages)) if messages else 0.0
            new = 0.15 / n + 0.85 * total
            ctx.aggregate("converged", abs(new - v.value) < self.epsilon)
            v.value = new
        if self.max_supersteps is not None and s >= self.max_supersteps:
            ctx.vote_to_halt()
            return
        if v.nbrs:
            ctx.broadcast(to_fixed(v.value / len(v.nbrs)))

    def summary(self, values, supersteps):
        return {"pr_sum": sum(values.values())}


class PageRankPush(PageRank):
    """Undirected PageRank that pushes ``pr/deg`` by explicit responding.

    Each vertex calls ``respond_to`` for its neighbours; in the next
    superstep a vertex reads its neighbours' pushed values from the
    response table, so a value crosses the network once per worker.
    """

    name = "pagerank_push"
    combine = None

    def prepare(self, graph):
        if graph.directed:
            raise ValueError("pagerank_push needs an undirected graph")

    def respond(self, v, ctx):
        return to_fixed(v.value / len(v.nbrs))

    def compute(self, v, messages, ctx):
        s = ctx.superstep
        n = ctx.num_vertices
        if s == 1:
            v.value = 1.0 / n
        else:
            if s >= 3 and ctx.read_aggregate("converged"):
                ctx.vote_to_halt()
                return
            total = from_fixed(sum(ctx.get_resp(u) for u in v.nbrs)) if v.nbrs else 0.0
            new = 0.15 / n + 0.85 * total
            ctx.aggregate("converged", abs(new - v.value) < self.epsilon)
            v.value = new
        if self.max_supersteps is not None and s >= self.max_supersteps:
            ctx.vote_to_halt()
            return
        for u in v.nbrs:
            ctx.respond_to(u)
