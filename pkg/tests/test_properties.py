"""Transparency properties: results must not depend on how traffic is routed."""
import math

from hypothesis import given, settings, strategies as st

from bspgraph.algorithms import (SSSP, AttributeBroadcastMsg, AttributeBroadcastReq, HashMin,
                                 MinimumSpanningForest, PageRank, ShiloachVishkin)
from bspgraph.engine import EngineConfig, run
from bspgraph.graph import Graph
from bspgraph.msg_channel import flush_with_combiner
from oracles import component_minima, dijkstra, group_by_target, kruskal


@st.composite
def graphs(draw, directed=False, weighted=False, max_n=40):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                                    st.integers(1, 9)), max_size=3 * n))
    g = Graph(directed=directed, weighted=weighted)
    for v in range(n):
        g.add_vertex(v)
    for u, v, w in edges:
        g.add_edge(u, v, float(w) if weighted else None)
    return g


routing = st.fixed_dictionaries({
    "num_workers": st.sampled_from([1, 2, 3, 4, 8]),
    "mirror_threshold": st.sampled_from([0, 1, 3, 10, math.inf]),
    "use_combiner": st.booleans(),
    "shuffle_seed": st.one_of(st.none(), st.integers(0, 1000)),
})


@given(graphs(), routing)
def test_hashmin_and_sv_invariant(g, r):
    ref = component_minima(g)
    assert run(g, HashMin(), EngineConfig(**r)).values == ref
    assert run(g, ShiloachVishkin(True), EngineConfig(**r)).values == ref
    assert run(g, ShiloachVishkin(False), EngineConfig(**r)).values == ref


@given(graphs(directed=True, weighted=True), routing)
def test_sssp_invariant(g, r):
    assert run(g, SSSP(0), EngineConfig(**r)).values == dijkstra(g, 0)


@given(graphs(weighted=True), routing)
def test_msf_invariant(g, r):
    res = run(g, MinimumSpanningForest(), EngineConfig(**r))
    assert sorted(e for es in res.values.values() for e in es) == kruskal(g)


@settings(max_examples=30)
@given(graphs(directed=True), routing)
def test_pagerank_bitwise_invariant(g, r):
    base = run(g, PageRank(1e-9), EngineConfig())
    other = run(g, PageRank(1e-9), EngineConfig(**r))
    assert other.values == base.values
    assert other.report.supersteps == base.report.supersteps


@given(graphs(directed=True), st.sampled_from([1, 2, 4, 8]))
def test_attribute_broadcast_variants_agree(g, m):
    cfg = EngineConfig(num_workers=m)
    assert run(g, AttributeBroadcastReq(), cfg).values == run(g, AttributeBroadcastMsg(), cfg).values


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(-50, 50)), max_size=100),
       st.randoms(use_true_random=False))
def test_min_combiner_is_order_insensitive(buf, rnd):
    a, _ = flush_with_combiner(list(buf), min)
    shuffled = list(buf)
    rnd.shuffle(shuffled)
    b, _ = flush_with_combiner(shuffled, min)
    assert a == b == sorted((t, min(p)) for t, p in group_by_target(buf).items())


@given(st.integers(), st.integers(), st.integers())
def test_combiners_associative_commutative(a, b, c):
    for f in (HashMin().combine, PageRank().combine):
        assert f(a, b) == f(b, a)
        assert f(f(a, b), c) == f(a, f(b, c))
