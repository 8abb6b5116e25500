from hypothesis import given, strategies as st

import pytest

from bspgraph.engine import Vertex
from bspgraph.metrics import WorkerStats
from bspgraph.msg_channel import MessageChannel, UnknownTargetError, deliver, flush_with_combiner
from oracles import group_by_target


def add(a, b):
    return a + b


def test_sum_combiner_example():
    batch, gone = flush_with_combiner([("v", 1), ("v", 2), ("u", 3)], add)
    assert dict(batch) == {"v": 3, "u": 3}
    assert gone == 1


def test_empty_buffer():
    assert flush_with_combiner([], add) == ([], 0)


def test_distinct_targets_not_combined():
    buf = [(i, i) for i in range(10)]
    batch, gone = flush_with_combiner(buf, add)
    assert len(batch) == 10 and gone == 0


def test_many_sends_to_one_target_become_one():
    batch, gone = flush_with_combiner([(42, i) for i in range(1000)], min)
    assert batch == [(42, 0)] and gone == 999


def test_without_combiner_buffer_is_verbatim():
    buf = [(2, "a"), (1, "b"), (2, "c")]
    assert flush_with_combiner(buf, None) == (buf, 0)


@given(st.lists(st.tuples(st.integers(0, 30), st.integers(-100, 100)), max_size=200))
def test_combiner_matches_group_by_oracle(buf):
    batch, gone = flush_with_combiner(list(buf), add)
    groups = group_by_target(buf)
    assert len(batch) == len(groups)
    assert dict(batch) == {t: sum(p) for t, p in groups.items()}
    assert [t for t, _ in batch] == sorted(groups)
    assert gone == len(buf) - len(groups)


def _table(*ids):
    return {i: Vertex(i, [], None, None) for i in ids}


def test_deliver_appends_and_wakes():
    t = _table("v")
    t["v"].active = False
    assert deliver([("v", 3)], t) == 1
    assert t["v"].inbox == [3] and t["v"].active


def test_deliver_keeps_batch_order():
    t = _table("v")
    deliver([("v", "from1")], t)
    deliver([("v", "from2")], t)
    assert t["v"].inbox == ["from1", "from2"]


def test_unknown_target():
    with pytest.raises(UnknownTargetError):
        deliver([("x", 1)], _table("v"))
    assert deliver([("x", 1)], _table("v"), on_unknown="drop") == 0


def test_channel_counts_wire_only_for_remote_buffers():
    ch = MessageChannel(index=0, num_workers=2)
    ch.out[0].extend([(0, 1), (0, 2)])
    ch.out[1].extend([(1, 1), (1, 2), (3, 5)])
    stats = WorkerStats()
    batches = ch.flush(add, stats)
    assert batches[1] == [(1, 3), (3, 5)]
    assert stats.msg_wire == 2 and stats.combined_away == 2
    assert ch.out == [[], []]
