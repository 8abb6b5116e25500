import math

import pytest

from bspgraph.generators import powerlaw_graph, star_graph
from bspgraph.graph import Graph
from bspgraph.mirror import build_mirrors, compute_threshold, per_vertex_send_bound_check


def mod(m):
    return lambda v: v % m


class TestThreshold:
    def test_hundred_workers_degree_fifty(self):
        assert 164.8 <= compute_threshold(100, 50) <= 164.9
        assert round(compute_threshold(100, 50)) == 165

    def test_single_worker_zero_degree(self):
        assert compute_threshold(1, 0) == 1

    def test_btc_scale_against_reported_value(self):
        tau = compute_threshold(120, 4.69)
        assert tau == pytest.approx(124.8, abs=0.05)
        assert abs(tau - 126) / 126 <= 0.05

    def test_criterion_instance(self):
        assert compute_threshold(8, 20) == pytest.approx(8 * math.exp(2.5))

    @pytest.mark.parametrize("m,d", [(0, 1.0), (4, -1.0)])
    def test_bad_inputs(self, m, d):
        with pytest.raises(ValueError):
            compute_threshold(m, d)


class TestBuild:
    def test_star_center_over_three_workers(self):
        g = star_graph(6)
        mt = build_mirrors(g, 5, 3, mod(3))
        assert mt.holders == {0: (0, 1, 2)}
        assert sum(len(t[0]) for t in mt.tables) == 6
        # worker 0 is home; the other two hold real mirrors
        assert mt.construction_messages == 2

    def test_infinite_threshold(self):
        mt = build_mirrors(star_graph(6), math.inf, 3, mod(3))
        assert mt.holders == {} and all(t == {} for t in mt.tables)

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            build_mirrors(star_graph(3), -1, 2, mod(2))

    def test_powerlaw_mirrored_set_is_degree_scan(self):
        g = powerlaw_graph(5000, 600, seed=2, directed=True)
        mt = build_mirrors(g, 100, 8, mod(8))
        assert mt.mirrored == {v for v, a in g.adj.items() if len(a) >= 100}
        assert mt.mirrored

    def test_tables_preserve_adjacency_order_and_weights(self):
        g = Graph(directed=True, weighted=True)
        for i, u in enumerate([5, 2, 7, 4]):
            g.add_edge(0, u, float(i))
        mt = build_mirrors(g, 1, 2, mod(2))
        assert mt.tables[1][0] == [(5, 0.0), (7, 2.0)]
        assert mt.tables[0][0] == [(2, 1.0), (4, 3.0)]


@pytest.mark.parametrize("sends,deg,m,ok", [
    (8, 1_000_000, 8, True), (9, 1_000_000, 8, False), (2, 2, 8, True), (3, 2, 8, False),
    (0, 0, 8, True),
])
def test_send_bound(sends, deg, m, ok):
    assert per_vertex_send_bound_check(sends, deg, m) is ok
