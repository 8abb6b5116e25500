import pytest

from bspgraph.reqresp import RequestChannel, ResponseMissing, build_response_sets, message_bound_check


def test_requests_are_deduplicated_per_worker():
    ch = RequestChannel(0, 2)
    for _ in range(1000):
        ch.request(7, 1)
    assert ch.take_requests() == [[], [7]]
    assert ch.take_requests() == [[], []]


def test_explicit_dedup():
    ch = RequestChannel(0, 3)
    ch.respond_to(4, 2)
    ch.respond_to(4, 2)
    assert ch.take_explicit() == [[], [], [4]]


def test_response_sets_union_implicit_and_explicit():
    sets = build_response_sets([[1, 2], []], [[2], [3]], lambda u: u * 10)
    assert sets == [{1: 10, 2: 20}, {3: 30}]


def test_get_without_entry():
    with pytest.raises(ResponseMissing):
        RequestChannel(0, 1).get(3)


@pytest.mark.parametrize("req,resp,ell,ok", [
    (8, 8, 100_000, True), (9, 8, 100_000, False), (1, 1, 1, True), (2, 1, 1, False),
    (0, 0, 0, True),
])
def test_bound(req, resp, ell, ok):
    assert message_bound_check(req, resp, ell, 8) is ok
